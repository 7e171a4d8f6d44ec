#include "monospec/periodogram.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <numbers>
#include <ostream>
#include <vector>

#include "monospec/csv.hpp"
#include "monospec/errors.hpp"

namespace monospec {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_series(const Eigen::VectorXd& x) {
  if (x.size() < 3) throw ParameterError("periodogram: need n >= 3");
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) throw DataError("periodogram: non-finite sample value");
  }
}

// Full-circle DFT magnitudes-squared scaled by 1/(2 pi n).
Eigen::VectorXd fft_circle(const Eigen::VectorXd& x) {
  const int n = static_cast<int>(x.size());
  thread_local Eigen::FFT<double> fft;
  std::vector<double> in(x.data(), x.data() + n);
  std::vector<std::complex<double>> spectrum;
  fft.fwd(spectrum, in);
  Eigen::VectorXd out(n);
  if (spectrum.size() == static_cast<std::size_t>(n)) {
    for (int k = 0; k < n; ++k) out[k] = std::norm(spectrum[k]) / (kTwoPi * n);
  } else {
    // half-spectrum layout: mirror the conjugate-symmetric part
    for (int k = 0; k < n; ++k) {
      const int idx = k < static_cast<int>(spectrum.size()) ? k : n - k;
      out[k] = std::norm(spectrum[idx]) / (kTwoPi * n);
    }
  }
  return out;
}

}  // namespace

Eigen::VectorXd fourier_frequencies(int n) {
  if (n < 3) throw ParameterError("fourier_frequencies: need n >= 3 for a nonempty grid");
  const int k_max = (n - 1) / 2;
  Eigen::VectorXd freqs(k_max);
  for (int k = 1; k <= k_max; ++k) freqs[k - 1] = kTwoPi * k / n;
  return freqs;
}

Periodogram periodogram(const Eigen::VectorXd& x) {
  check_series(x);
  const int n = static_cast<int>(x.size());
  const Eigen::VectorXd circle = fft_circle(x);
  Periodogram pg;
  pg.n = n;
  pg.freqs = fourier_frequencies(n);
  const int k_max = (n - 1) / 2;
  pg.ordinates = circle.segment(1, k_max);
  return pg;
}

Periodogram periodogram_direct(const Eigen::VectorXd& x) {
  check_series(x);
  const int n = static_cast<int>(x.size());
  const int k_max = (n - 1) / 2;
  Periodogram pg;
  pg.n = n;
  pg.freqs = fourier_frequencies(n);
  pg.ordinates.resize(k_max);
  for (int k = 1; k <= k_max; ++k) {
    double re = 0.0, im = 0.0;
    for (int j = 1; j <= n; ++j) {
      // reduce j*k modulo n in integers so the angle never loses precision
      const long long r = (static_cast<long long>(j) * k) % n;
      const double theta = -kTwoPi * static_cast<double>(r) / n;
      re += x[j - 1] * std::cos(theta);
      im += x[j - 1] * std::sin(theta);
    }
    pg.ordinates[k - 1] = (re * re + im * im) / (kTwoPi * n);
  }
  return pg;
}

Eigen::VectorXd full_circle_ordinates(const Eigen::VectorXd& x) {
  check_series(x);
  return fft_circle(x);
}

LogPeriodogram log_periodogram(const Periodogram& pg) {
  LogPeriodogram lpg;
  lpg.n = pg.n;
  lpg.freqs = pg.freqs;
  lpg.ordinates = pg.ordinates;
  lpg.values.resize(pg.ordinates.size());
  for (Eigen::Index i = 0; i < pg.ordinates.size(); ++i) {
    if (!(pg.ordinates[i] > 0.0))
      throw DataError("log_periodogram: nonpositive ordinate (degenerate input series)");
    lpg.values[i] = std::log(pg.ordinates[i]) + kEulerGamma;
  }
  return lpg;
}

double step_periodogram_at(const Periodogram& pg, double t) {
  if (!(t > 0.0 && t <= kPi)) throw ParameterError("step_periodogram_at: t must lie in (0, pi]");
  // nudge guards against t == lambda_k rounding just below the cell boundary
  long long k = static_cast<long long>(std::floor(pg.n * t / kTwoPi + 1e-9));
  k = std::max<long long>(1, std::min<long long>(k, pg.k_max()));
  return pg.ordinates[static_cast<Eigen::Index>(k - 1)];
}

void write_csv(const Periodogram& pg, std::ostream& out) {
  out << "k,lambda,ordinate\n";
  for (Eigen::Index i = 0; i < pg.ordinates.size(); ++i) {
    out << (i + 1) << ',' << format_double(pg.freqs[i]) << ','
        << format_double(pg.ordinates[i]) << '\n';
  }
}

void write_csv(const LogPeriodogram& lpg, std::ostream& out) {
  out << "k,lambda,ordinate,logval\n";
  for (Eigen::Index i = 0; i < lpg.values.size(); ++i) {
    out << (i + 1) << ',' << format_double(lpg.freqs[i]) << ','
        << format_double(lpg.ordinates[i]) << ',' << format_double(lpg.values[i]) << '\n';
  }
}

}  // namespace monospec
