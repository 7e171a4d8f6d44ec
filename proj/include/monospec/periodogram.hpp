#pragma once

#include <Eigen/Dense>

#include <iosfwd>

namespace monospec {

inline constexpr double kEulerGamma = 0.57721566490153286;

// Periodogram ordinates I_n(lambda_k) = |sum_j X_j e^{-ij lambda_k}|^2/(2 pi n)
// on the Fourier grid lambda_k = 2 pi k / n, k = 1..floor((n-1)/2).
struct Periodogram {
  int n = 0;
  Eigen::VectorXd freqs;
  Eigen::VectorXd ordinates;
  int k_max() const { return static_cast<int>(freqs.size()); }
};

// log I_n(lambda_k) + gamma on the same grid; gamma centers the log of the
// asymptotically exponential ordinates so the mean matches log f.
struct LogPeriodogram {
  int n = 0;
  Eigen::VectorXd freqs;
  Eigen::VectorXd ordinates;
  Eigen::VectorXd values;
};

// [2 pi k / n : k = 1..floor((n-1)/2)]; n >= 3.
Eigen::VectorXd fourier_frequencies(int n);

// FFT-based computation for arbitrary n.
Periodogram periodogram(const Eigen::VectorXd& x);

// O(n^2) direct summation with integer angle reduction; reference for tests.
Periodogram periodogram_direct(const Eigen::VectorXd& x);

// Ordinates on the full circle k = 0..n-1 (diagnostic; the Parseval identity
// (2 pi / n) * sum_k I_n(2 pi k / n) = mean(X^2) holds on this grid).
Eigen::VectorXd full_circle_ordinates(const Eigen::VectorXd& x);

// Throws DataError on any nonpositive ordinate (numerically degenerate data).
LogPeriodogram log_periodogram(const Periodogram& pg);

// Step-function evaluation: ordinate at index floor(n t / 2 pi), clamped to
// [1, k_max]; at grid points the value is the ordinate with that index.
double step_periodogram_at(const Periodogram& pg, double t);

// CSV serialization: (k, lambda, ordinate) and (k, lambda, ordinate, logval).
void write_csv(const Periodogram& pg, std::ostream& out);
void write_csv(const LogPeriodogram& lpg, std::ostream& out);

}  // namespace monospec
