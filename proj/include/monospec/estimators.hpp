#pragma once

#include <Eigen/Dense>

#include <iosfwd>

#include "monospec/periodogram.hpp"

namespace monospec {

// Non-increasing right-continuous step function on (0, pi]: levels over the
// Fourier grid, constant extension below lambda_1 and above lambda_kmax.
struct MonotoneStepFit {
  int n = 0;
  Eigen::VectorXd freqs;
  Eigen::VectorXd levels;
};

// Piecewise-linear concave function on [0, pi] with F(0) = 0.
struct ConcaveFit {
  Eigen::VectorXd knots;
  Eigen::VectorXd values;
  Eigen::VectorXd slopes;
};

// Antitonic least-squares projection of the periodogram ordinates.
MonotoneStepFit estimate_fhat(const Periodogram& pg);

// exp of the antitonic projection of the gamma-centered log-periodogram;
// throws DataError when any ordinate is nonpositive.
MonotoneStepFit estimate_ftilde(const Periodogram& pg);

// Least concave majorant of the empirical spectral distribution diagram
// (cumulative ordinate sums scaled by the grid spacing 2 pi / n, anchored at
// the origin); its slopes over the grid equal the estimate_fhat levels.
ConcaveFit estimate_Fhat(const Periodogram& pg);

// Step evaluation with the same cell convention as step_periodogram_at.
double evaluate(const MonotoneStepFit& fit, double t);

// CSV serialization: (lambda, level).
void write_csv(const MonotoneStepFit& fit, std::ostream& out);

}  // namespace monospec
