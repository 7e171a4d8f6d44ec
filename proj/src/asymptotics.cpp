#include "monospec/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "monospec/errors.hpp"
#include "monospec/estimators.hpp"
#include "monospec/parallel.hpp"
#include "monospec/periodogram.hpp"

namespace monospec {

namespace {

constexpr double kPi = std::numbers::pi;

void check_config(const ChernoffSamplerConfig& cfg) {
  if (!(cfg.half_width >= 3.0)) throw ParameterError("chernoff: half_width must be >= 3");
  if (!(cfg.step > 0.0 && cfg.step <= 0.01))
    throw ParameterError("chernoff: step must lie in (0, 0.01]");
  const double ratio = cfg.half_width / cfg.step;
  if (std::abs(ratio - std::llround(ratio)) > 1e-9)
    throw ParameterError("chernoff: half_width must be an integer multiple of step");
  if (cfg.sample_count < 1) throw ParameterError("chernoff: sample_count must be positive");
}

void check_slope(double fprime_t0) {
  if (!(fprime_t0 < 0.0))
    throw HypothesisError("limit constant requires f'(t0) < 0 (strictly decreasing density)");
}

void check_f(double f_t0) {
  if (!(f_t0 > 0.0)) throw ParameterError("limit constant requires f(t0) > 0");
}

}  // namespace

std::vector<double> chernoff_sample(const ChernoffSamplerConfig& cfg, RngStream& rng) {
  check_config(cfg);
  const long long m = std::llround(cfg.half_width / cfg.step);
  const double h = cfg.step;
  const double sqrt_h = std::sqrt(h);
  std::vector<double> samples(cfg.sample_count);
  std::vector<double> right(m), left(m);
  for (int s = 0; s < cfg.sample_count; ++s) {
    RngStream walk = rng.child(static_cast<std::uint64_t>(s));
    RngStream right_rng = walk.child(0);
    RngStream left_rng = walk.child(1);
    double cum = 0.0;
    for (long long i = 0; i < m; ++i) {
      cum += sqrt_h * right_rng.gaussian();
      right[i] = cum;
    }
    cum = 0.0;
    for (long long i = 0; i < m; ++i) {
      cum += sqrt_h * left_rng.gaussian();
      left[i] = cum;
    }
    // scan the grid -L..L in ascending order; ties keep the leftmost argmax
    double best_value = left[m - 1] - (m * h) * (m * h);
    double best_arg = -static_cast<double>(m) * h;
    for (long long i = m - 1; i >= 1; --i) {
      const double s_i = -static_cast<double>(i) * h;
      const double v = left[i - 1] - s_i * s_i;
      if (v > best_value) {
        best_value = v;
        best_arg = s_i;
      }
    }
    if (0.0 > best_value) {
      best_value = 0.0;
      best_arg = 0.0;
    }
    for (long long i = 1; i <= m; ++i) {
      const double s_i = static_cast<double>(i) * h;
      const double v = right[i - 1] - s_i * s_i;
      if (v > best_value) {
        best_value = v;
        best_arg = s_i;
      }
    }
    samples[s] = best_arg;
  }
  return samples;
}

double limit_constant_fhat(double f_t0, double fprime_t0) {
  check_f(f_t0);
  check_slope(fprime_t0);
  return 2.0 * std::cbrt(-kPi * f_t0 * f_t0 * fprime_t0);
}

double limit_constant_fhat(const SpectralModel& model, double t0) {
  return limit_constant_fhat(spectral_density(model, t0), spectral_density_deriv(model, t0));
}

double limit_constant_ftilde_log(double f_t0, double fprime_t0) {
  check_f(f_t0);
  check_slope(fprime_t0);
  const double pi4 = kPi * kPi * kPi * kPi;
  return 2.0 * std::cbrt(-pi4 * fprime_t0 / (3.0 * f_t0));
}

double limit_constant_ftilde_log(const SpectralModel& model, double t0) {
  return limit_constant_ftilde_log(spectral_density(model, t0),
                                   spectral_density_deriv(model, t0));
}

double limit_constant_ftilde(double f_t0, double fprime_t0) {
  check_f(f_t0);
  check_slope(fprime_t0);
  const double pi4 = kPi * kPi * kPi * kPi;
  return 2.0 * std::cbrt(-pi4 * f_t0 * f_t0 * fprime_t0 / 3.0);
}

double limit_constant_ftilde(const SpectralModel& model, double t0) {
  return limit_constant_ftilde(spectral_density(model, t0), spectral_density_deriv(model, t0));
}

std::vector<double> normalized_error_samples(const LimitExperiment& exp, RngStream& rng,
                                             int threads) {
  validate(exp.model);
  if (!(exp.t0 > 0.0 && exp.t0 < kPi)) throw ParameterError("limit experiment: t0 in (0, pi)");
  if (exp.n < 8) throw ParameterError("limit experiment: n must be at least 8");
  if (exp.reps < 1) throw ParameterError("limit experiment: reps must be positive");
  const double f_t0 = spectral_density(exp.model, exp.t0);
  const double fp_t0 = spectral_density_deriv(exp.model, exp.t0);
  const bool log_scale = exp.estimator == EstimatorKind::ftilde;
  const double constant =
      log_scale ? limit_constant_ftilde_log(f_t0, fp_t0) : limit_constant_fhat(f_t0, fp_t0);
  const double cube_root_n = std::cbrt(static_cast<double>(exp.n));
  std::vector<double> samples(exp.reps);
  parallel_for(exp.reps, threads, [&](std::int64_t r) {
    RngStream stream = rng.child(static_cast<std::uint64_t>(r));
    const Eigen::VectorXd path = simulate_path(exp.model, exp.n, stream, exp.sim);
    const Periodogram pg = periodogram(linear_detrend(path));
    const MonotoneStepFit fit =
        log_scale ? estimate_ftilde(pg) : estimate_fhat(pg);
    const double value = evaluate(fit, exp.t0);
    const double err = log_scale ? std::log(value) - std::log(f_t0) : value - f_t0;
    samples[r] = cube_root_n * err / constant;
  });
  return samples;
}

double ks_distance(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) throw ParameterError("ks_distance: empty sample");
  std::vector<double> sa = a, sb = b;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());
  std::size_t ia = 0, ib = 0;
  double sup = 0.0;
  while (ia < sa.size() && ib < sb.size()) {
    const double v = std::min(sa[ia], sb[ib]);
    while (ia < sa.size() && sa[ia] <= v) ++ia;
    while (ib < sb.size() && sb[ib] <= v) ++ib;
    sup = std::max(sup, std::abs(ia / na - ib / nb));
  }
  return sup;
}

double sample_quantile(std::vector<double> values, double p) {
  if (values.empty()) throw ParameterError("sample_quantile: empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("sample_quantile: p must lie in [0, 1]");
  std::sort(values.begin(), values.end());
  const double pos = p * static_cast<double>(values.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

}  // namespace monospec
