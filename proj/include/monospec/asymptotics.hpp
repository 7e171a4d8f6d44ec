#pragma once

#include <cstdint>
#include <vector>

#include "monospec/models.hpp"
#include "monospec/rng.hpp"
#include "monospec/simulate.hpp"

namespace monospec {

// Discretized argmax sampler for the Chernoff-type limit variable
// zeta = argmax_{s} { W(s) - s^2 }, W two-sided standard Brownian motion.
struct ChernoffSamplerConfig {
  double half_width = 4.0;  // grid extent L
  double step = 0.005;      // grid spacing h; L/h must be integral
  int sample_count = 0;
};

// One argmax per sample over the grid {-L, ..., -h, 0, h, ..., L}; the two
// walk halves are independent, glued at W(0) = 0, with N(0, h) increments.
// Sample s draws from rng.child(s), so results do not depend on how much of
// rng has been consumed, nor on parallel scheduling.
std::vector<double> chernoff_sample(const ChernoffSamplerConfig& cfg, RngStream& rng);

enum class EstimatorKind { fhat, ftilde };

struct LimitExperiment {
  SpectralModel model;
  double t0 = 1.0;
  int n = 0;
  int reps = 0;
  EstimatorKind estimator = EstimatorKind::fhat;
  SimOptions sim = {};
};

// Limit-law scaling constants; all throw HypothesisError unless f'(t0) < 0.
// Closed-form overloads take (f(t0), f'(t0)) directly.
double limit_constant_fhat(double f_t0, double fprime_t0);
double limit_constant_fhat(const SpectralModel& model, double t0);
// Log-scale constant for the log-periodogram estimator.
double limit_constant_ftilde_log(double f_t0, double fprime_t0);
double limit_constant_ftilde_log(const SpectralModel& model, double t0);
// Density-scale constant; equals 3^{-1/3} pi times the fhat one.
double limit_constant_ftilde(double f_t0, double fprime_t0);
double limit_constant_ftilde(const SpectralModel& model, double t0);

// Per replication: simulate, detrend, estimate, and return the normalized
// pointwise error n^{1/3}(est(t0) - f(t0)) / C with C the density-scale
// constant for fhat, or n^{1/3}(log est(t0) - log f(t0)) / C_log for ftilde.
// Replication r uses rng.child(r).
std::vector<double> normalized_error_samples(const LimitExperiment& exp, RngStream& rng,
                                             int threads = 1);

// Two-sample sup distance between empirical CDFs.
double ks_distance(const std::vector<double>& a, const std::vector<double>& b);

// Type-7 (linear interpolation) empirical quantile; p in [0, 1].
double sample_quantile(std::vector<double> values, double p);

}  // namespace monospec
