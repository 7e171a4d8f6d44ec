#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "monospec/models.hpp"
#include "monospec/rng.hpp"
#include "monospec/simulate.hpp"

namespace monospec {

enum class Estimator { raw_periodogram, fhat, ftilde };

std::string estimator_name(Estimator est);
Estimator estimator_from_name(const std::string& name);

struct MiseRow {
  Estimator estimator;
  int n = 0;
  int reps = 0;
  double mise = 0.0;
  double mc_se = 0.0;
};

// Root-sum-of-squares error on the half grid, normalized so the statistic is
// comparable across n:
//   sqrt( (4 pi^2 / n) * sum_{k=1}^{floor((n-1)/2)} (est_k - f(lambda_k))^2 ).
double mise_metric(const Eigen::VectorXd& est, const Eigen::VectorXd& truth, int n);

struct RepErrors {
  double raw = 0.0;
  double fhat = 0.0;
  double ftilde = 0.0;
};

// One Monte Carlo replication on a shared path: simulate, linearly detrend,
// take the periodogram, evaluate all three estimators. Hard-asserts the
// monotonicity of the fits and the per-replication contraction
// sum(fhat - f)^2 <= sum(I_n - f)^2 (InvariantError on failure).
RepErrors mise_rep_errors(const SpectralModel& model, int n, RngStream& stream,
                          const SimOptions& opts = {});

double mise_one_rep(const SpectralModel& model, int n, Estimator est, RngStream& stream,
                    const SimOptions& opts = {});

// Mean and MC standard error of mise_one_rep over reps, for every requested
// (estimator, n). Replication r of size n draws from
// RngStream(master_seed).child(n).child(r), so the same paths are shared
// across estimators (paired comparisons) and cells are reproducible
// bit-identically regardless of the thread count.
std::vector<MiseRow> mise_table(const SpectralModel& model, const std::vector<int>& n_list,
                                int reps, const std::vector<Estimator>& estimators,
                                std::uint64_t master_seed, int threads = 1,
                                const SimOptions& opts = {});

struct PointwiseStats {
  Eigen::VectorXd freqs;
  Eigen::VectorXd mean;
  Eigen::VectorXd lower;  // empirical 2.5% quantile
  Eigen::VectorXd upper;  // empirical 97.5% quantile
};

PointwiseStats pointwise_stats(const SpectralModel& model, int n, int reps, Estimator est,
                               std::uint64_t master_seed, int threads = 1,
                               const SimOptions& opts = {});

// Least-squares slope of log RMSE(t0) against log n; n_list must be
// increasing with at least four sizes.
double rate_slope(const SpectralModel& model, double t0, const std::vector<int>& n_list,
                  int reps, Estimator est, std::uint64_t master_seed, int threads = 1,
                  const SimOptions& opts = {});

// Tabulated reference MISE values for the built-in examples (1 or 2) at
// n in {100, 500, 1000, 5000}; empty otherwise.
std::optional<double> table_reference(int example_id, Estimator est, int n);

}  // namespace monospec
