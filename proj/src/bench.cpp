#include "monospec/bench.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <vector>

#include "monospec/asymptotics.hpp"
#include "monospec/errors.hpp"
#include "monospec/estimators.hpp"
#include "monospec/parallel.hpp"
#include "monospec/periodogram.hpp"

namespace monospec {

namespace {

constexpr double kPi = std::numbers::pi;

void check_non_increasing(const Eigen::VectorXd& levels, const char* what) {
  for (Eigen::Index i = 0; i + 1 < levels.size(); ++i) {
    const double slack = 1e-12 * std::max(1.0, std::abs(levels[i]));
    if (levels[i + 1] > levels[i] + slack)
      throw InvariantError(std::string(what) + ": fitted levels are not non-increasing");
  }
}

void check_bench_pre(const SpectralModel& model, int n) {
  validate(model);
  if (!strictly_decreasing_regime(model))
    throw ParameterError("benchmark requires a strictly decreasing spectral density");
  if (n < 8) throw ParameterError("benchmark requires n >= 8");
}

Eigen::VectorXd truth_on_grid(const SpectralModel& model, const Eigen::VectorXd& freqs) {
  Eigen::VectorXd f(freqs.size());
  for (Eigen::Index k = 0; k < freqs.size(); ++k) f[k] = spectral_density(model, freqs[k]);
  return f;
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double se_of(const std::vector<double>& v, double mean) {
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double var = ss / static_cast<double>(v.size() - 1);
  return std::sqrt(var / static_cast<double>(v.size()));
}

}  // namespace

std::string estimator_name(Estimator est) {
  switch (est) {
    case Estimator::raw_periodogram:
      return "raw_periodogram";
    case Estimator::fhat:
      return "fhat";
    case Estimator::ftilde:
      return "ftilde";
  }
  throw ParameterError("unknown estimator");
}

Estimator estimator_from_name(const std::string& name) {
  if (name == "raw_periodogram" || name == "raw") return Estimator::raw_periodogram;
  if (name == "fhat") return Estimator::fhat;
  if (name == "ftilde") return Estimator::ftilde;
  throw ParameterError("unknown estimator name: " + name);
}

double mise_metric(const Eigen::VectorXd& est, const Eigen::VectorXd& truth, int n) {
  if (est.size() != truth.size()) throw ParameterError("mise_metric: size mismatch");
  if (n < 1) throw ParameterError("mise_metric: n must be positive");
  const double ss = (est - truth).squaredNorm();
  return std::sqrt(4.0 * kPi * kPi / static_cast<double>(n) * ss);
}

RepErrors mise_rep_errors(const SpectralModel& model, int n, RngStream& stream,
                          const SimOptions& opts) {
  check_bench_pre(model, n);
  const Eigen::VectorXd path = simulate_path(model, n, stream, opts);
  const Periodogram pg = periodogram(linear_detrend(path));
  const Eigen::VectorXd truth = truth_on_grid(model, pg.freqs);
  const MonotoneStepFit fit_hat = estimate_fhat(pg);
  const MonotoneStepFit fit_tilde = estimate_ftilde(pg);
  check_non_increasing(fit_hat.levels, "fhat");
  check_non_increasing(fit_tilde.levels, "ftilde");
  const double ssr_raw = (pg.ordinates - truth).squaredNorm();
  const double ssr_hat = (fit_hat.levels - truth).squaredNorm();
  if (ssr_hat > ssr_raw + 1e-9 * std::max(1.0, ssr_raw))
    throw InvariantError("fhat projection failed the per-replication contraction bound");
  RepErrors rep;
  rep.raw = mise_metric(pg.ordinates, truth, n);
  rep.fhat = mise_metric(fit_hat.levels, truth, n);
  rep.ftilde = mise_metric(fit_tilde.levels, truth, n);
  return rep;
}

double mise_one_rep(const SpectralModel& model, int n, Estimator est, RngStream& stream,
                    const SimOptions& opts) {
  const RepErrors rep = mise_rep_errors(model, n, stream, opts);
  switch (est) {
    case Estimator::raw_periodogram:
      return rep.raw;
    case Estimator::fhat:
      return rep.fhat;
    case Estimator::ftilde:
      return rep.ftilde;
  }
  throw ParameterError("unknown estimator");
}

std::vector<MiseRow> mise_table(const SpectralModel& model, const std::vector<int>& n_list,
                                int reps, const std::vector<Estimator>& estimators,
                                std::uint64_t master_seed, int threads,
                                const SimOptions& opts) {
  if (n_list.empty()) throw ParameterError("mise_table: empty n list");
  if (estimators.empty()) throw ParameterError("mise_table: no estimators requested");
  if (reps < 2) throw ParameterError("mise_table: reps must be at least 2");
  for (int n : n_list) check_bench_pre(model, n);

  std::map<int, std::vector<RepErrors>> cells;
  for (int n : n_list) {
    std::vector<RepErrors>& slots = cells[n];
    if (!slots.empty()) continue;  // duplicate n entries share one computation
    slots.resize(reps);
    parallel_for(reps, threads, [&](std::int64_t r) {
      RngStream stream = RngStream(master_seed)
                             .child(static_cast<std::uint64_t>(n))
                             .child(static_cast<std::uint64_t>(r));
      slots[static_cast<std::size_t>(r)] = mise_rep_errors(model, n, stream, opts);
    });
  }

  std::vector<MiseRow> rows;
  rows.reserve(estimators.size() * n_list.size());
  for (Estimator est : estimators) {
    for (int n : n_list) {
      const std::vector<RepErrors>& slots = cells[n];
      std::vector<double> errs(slots.size());
      for (std::size_t r = 0; r < slots.size(); ++r) {
        switch (est) {
          case Estimator::raw_periodogram:
            errs[r] = slots[r].raw;
            break;
          case Estimator::fhat:
            errs[r] = slots[r].fhat;
            break;
          case Estimator::ftilde:
            errs[r] = slots[r].ftilde;
            break;
        }
      }
      MiseRow row;
      row.estimator = est;
      row.n = n;
      row.reps = reps;
      row.mise = mean_of(errs);
      row.mc_se = se_of(errs, row.mise);
      rows.push_back(row);
    }
  }
  return rows;
}

PointwiseStats pointwise_stats(const SpectralModel& model, int n, int reps, Estimator est,
                               std::uint64_t master_seed, int threads,
                               const SimOptions& opts) {
  check_bench_pre(model, n);
  if (reps < 2) throw ParameterError("pointwise_stats: reps must be at least 2");
  const Eigen::VectorXd freqs = fourier_frequencies(n);
  const Eigen::Index k_max = freqs.size();
  Eigen::MatrixXd values(reps, k_max);
  parallel_for(reps, threads, [&](std::int64_t r) {
    RngStream stream = RngStream(master_seed)
                           .child(static_cast<std::uint64_t>(n))
                           .child(static_cast<std::uint64_t>(r));
    const Eigen::VectorXd path = simulate_path(model, n, stream, opts);
    const Periodogram pg = periodogram(linear_detrend(path));
    Eigen::VectorXd row;
    switch (est) {
      case Estimator::raw_periodogram:
        row = pg.ordinates;
        break;
      case Estimator::fhat:
        row = estimate_fhat(pg).levels;
        break;
      case Estimator::ftilde:
        row = estimate_ftilde(pg).levels;
        break;
    }
    values.row(r) = row.transpose();
  });

  PointwiseStats stats;
  stats.freqs = freqs;
  stats.mean = values.colwise().mean().transpose();
  stats.lower.resize(k_max);
  stats.upper.resize(k_max);
  for (Eigen::Index k = 0; k < k_max; ++k) {
    std::vector<double> col(values.col(k).data(), values.col(k).data() + reps);
    stats.lower[k] = sample_quantile(col, 0.025);
    stats.upper[k] = sample_quantile(std::move(col), 0.975);
  }
  return stats;
}

double rate_slope(const SpectralModel& model, double t0, const std::vector<int>& n_list,
                  int reps, Estimator est, std::uint64_t master_seed, int threads,
                  const SimOptions& opts) {
  if (n_list.size() < 4) throw ParameterError("rate_slope: need at least four sample sizes");
  for (std::size_t i = 0; i + 1 < n_list.size(); ++i)
    if (n_list[i + 1] <= n_list[i]) throw ParameterError("rate_slope: n list must be increasing");
  if (!(t0 > 0.0 && t0 < kPi)) throw ParameterError("rate_slope: t0 must lie in (0, pi)");
  if (reps < 2) throw ParameterError("rate_slope: reps must be at least 2");
  for (int n : n_list) check_bench_pre(model, n);
  const double f_t0 = spectral_density(model, t0);

  std::vector<double> log_n(n_list.size()), log_rmse(n_list.size());
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    const int n = n_list[i];
    std::vector<double> sq(reps);
    parallel_for(reps, threads, [&](std::int64_t r) {
      RngStream stream = RngStream(master_seed)
                             .child(static_cast<std::uint64_t>(n))
                             .child(static_cast<std::uint64_t>(r));
      const Eigen::VectorXd path = simulate_path(model, n, stream, opts);
      const Periodogram pg = periodogram(linear_detrend(path));
      double value = 0.0;
      switch (est) {
        case Estimator::raw_periodogram:
          value = step_periodogram_at(pg, t0);
          break;
        case Estimator::fhat:
          value = evaluate(estimate_fhat(pg), t0);
          break;
        case Estimator::ftilde:
          value = evaluate(estimate_ftilde(pg), t0);
          break;
      }
      const double err = value - f_t0;
      sq[static_cast<std::size_t>(r)] = err * err;
    });
    log_n[i] = std::log(static_cast<double>(n));
    log_rmse[i] = 0.5 * std::log(mean_of(sq));
  }

  const double mx = mean_of(log_n);
  const double my = mean_of(log_rmse);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    sxx += (log_n[i] - mx) * (log_n[i] - mx);
    sxy += (log_n[i] - mx) * (log_rmse[i] - my);
  }
  return sxy / sxx;
}

std::optional<double> table_reference(int example_id, Estimator est, int n) {
  struct Cell {
    int n;
    double raw, fhat, ftilde;
  };
  static const std::vector<Cell> table1 = {{100, 9.59, 6.38, 9.11},
                                           {500, 12.96, 5.48, 8.52},
                                           {1000, 13.67, 4.76, 7.27},
                                           {5000, 14.25, 2.95, 4.26}};
  static const std::vector<Cell> table2 = {{100, 1.80, 0.710, 1.12},
                                           {500, 1.99, 0.520, 0.803},
                                           {1000, 2.02, 0.432, 0.659},
                                           {5000, 2.07, 0.305, 0.472}};
  const std::vector<Cell>* table = nullptr;
  if (example_id == 1) table = &table1;
  if (example_id == 2) table = &table2;
  if (table == nullptr) return std::nullopt;
  for (const Cell& cell : *table) {
    if (cell.n != n) continue;
    switch (est) {
      case Estimator::raw_periodogram:
        return cell.raw;
      case Estimator::fhat:
        return cell.fhat;
      case Estimator::ftilde:
        return cell.ftilde;
    }
  }
  return std::nullopt;
}

}  // namespace monospec
