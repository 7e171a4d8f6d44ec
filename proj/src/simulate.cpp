#include "monospec/simulate.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "monospec/errors.hpp"

namespace monospec {

namespace {

void check_n(int n) {
  if (n < 2) throw ParameterError("path length n must be at least 2");
}

void check_sigma(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ParameterError("sigma must be positive");
}

Eigen::FFT<double>& thread_fft() {
  thread_local Eigen::FFT<double> fft;  // caches kissfft plans per size
  return fft;
}

// Linear convolution of a and b via a zero-padded power-of-two FFT.
std::vector<double> fft_convolve(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t out_len = a.size() + b.size() - 1;
  std::size_t nfft = 1;
  while (nfft < out_len) nfft <<= 1;
  std::vector<double> pa(nfft, 0.0), pb(nfft, 0.0);
  std::copy(a.begin(), a.end(), pa.begin());
  std::copy(b.begin(), b.end(), pb.begin());
  auto& fft = thread_fft();
  std::vector<std::complex<double>> fa, fb;
  fft.fwd(fa, pa);
  fft.fwd(fb, pb);
  for (std::size_t i = 0; i < fa.size(); ++i) fa[i] *= fb[i];
  std::vector<double> out;
  fft.inv(out, fa);
  out.resize(out_len);
  return out;
}

}  // namespace

Eigen::VectorXd gen_white_noise(int n, double sigma, RngStream& rng) {
  check_n(n);
  check_sigma(sigma);
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x[i] = sigma * rng.gaussian();
  return x;
}

Eigen::VectorXd gen_ar1(int n, double a, double sigma, RngStream& rng) {
  check_n(n);
  check_sigma(sigma);
  if (!(std::abs(a) < 1.0)) throw ParameterError("ar1: |a| < 1 required for stationarity");
  double state = sigma / std::sqrt(1.0 - a * a) * rng.gaussian();
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) {
    state = a * state + sigma * rng.gaussian();
    x[i] = state;
  }
  return x;
}

Eigen::VectorXd arfima_ma_coefficients(double d, long truncation) {
  if (!(std::abs(d) < 0.5)) throw ParameterError("arfima: |d| < 1/2 required");
  if (truncation < 1) throw ParameterError("arfima: truncation must be at least 1");
  Eigen::VectorXd psi(truncation + 1);
  psi[0] = 1.0;
  for (long j = 1; j <= truncation; ++j) {
    psi[j] = psi[j - 1] * (static_cast<double>(j) - 1.0 + d) / static_cast<double>(j);
  }
  return psi;
}

long arfima_default_truncation(int n) {
  return std::max<long>(10L * n, 10000L);
}

Eigen::VectorXd gen_arfima(int n, double d, double sigma, long truncation, RngStream& rng) {
  check_n(n);
  check_sigma(sigma);
  if (!(std::abs(d) < 0.5)) throw ParameterError("arfima: |d| < 1/2 required");
  if (truncation < n)
    throw ParameterError("arfima: truncation must be at least n (psi decays slowly)");
  const Eigen::VectorXd psi = arfima_ma_coefficients(d, truncation);
  // innovations eps_{1-M} .. eps_n; index i holds eps_{i - M + 1}
  const long M = truncation;
  std::vector<double> eps(static_cast<std::size_t>(M) + n);
  for (auto& e : eps) e = rng.gaussian();
  std::vector<double> coef(psi.data(), psi.data() + psi.size());
  const std::vector<double> conv = fft_convolve(coef, eps);
  Eigen::VectorXd x(n);
  for (int k = 1; k <= n; ++k) x[k - 1] = sigma * conv[static_cast<std::size_t>(M) + k - 1];
  return x;
}

Eigen::VectorXd gen_sum(const Sum& model, int n, RngStream& rng, const SimOptions& opts) {
  if (model.components.empty()) throw ParameterError("sum: component list is empty");
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n >= 0 ? n : 0);
  for (std::size_t i = 0; i < model.components.size(); ++i) {
    RngStream component_rng = rng.child(i);
    x += simulate_path(model.components[i], n, component_rng, opts);
  }
  return x;
}

Eigen::VectorXd simulate_path(const SpectralModel& model, int n, RngStream& rng,
                              const SimOptions& opts) {
  validate(model);
  return std::visit(
      [&](const auto& node) -> Eigen::VectorXd {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, WhiteNoise>) {
          return gen_white_noise(n, node.sigma, rng);
        } else if constexpr (std::is_same_v<T, Ar1>) {
          return gen_ar1(n, node.a, node.sigma, rng);
        } else if constexpr (std::is_same_v<T, Arfima0d0>) {
          const long M = opts.arfima_truncation > 0 ? opts.arfima_truncation
                                                    : arfima_default_truncation(n);
          return gen_arfima(n, node.d, node.sigma, M, rng);
        } else {
          return gen_sum(node, n, rng, opts);
        }
      },
      model.node);
}

Eigen::VectorXd linear_detrend(const Eigen::VectorXd& x) {
  const Eigen::Index n = x.size();
  if (n < 2) throw ParameterError("linear_detrend: need at least two points");
  const double nd = static_cast<double>(n);
  const double t_mean = (nd + 1.0) / 2.0;
  const double x_mean = x.mean();
  double sxx = 0.0, sxy = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double dt = static_cast<double>(i + 1) - t_mean;
    sxx += dt * dt;
    sxy += dt * (x[i] - x_mean);
  }
  const double slope = sxy / sxx;
  Eigen::VectorXd out(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out[i] = x[i] - x_mean - slope * (static_cast<double>(i + 1) - t_mean);
  }
  return out;
}

}  // namespace monospec
