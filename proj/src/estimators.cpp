#include "monospec/estimators.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "monospec/csv.hpp"
#include "monospec/errors.hpp"
#include "monospec/isotonic.hpp"

namespace monospec {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_periodogram(const Periodogram& pg) {
  if (pg.k_max() < 1 || pg.freqs.size() != pg.ordinates.size())
    throw ParameterError("estimator: malformed periodogram");
}

}  // namespace

MonotoneStepFit estimate_fhat(const Periodogram& pg) {
  check_periodogram(pg);
  MonotoneStepFit fit;
  fit.n = pg.n;
  fit.freqs = pg.freqs;
  fit.levels = pava_antitonic<double>(pg.ordinates).levels;
  return fit;
}

MonotoneStepFit estimate_ftilde(const Periodogram& pg) {
  check_periodogram(pg);
  const LogPeriodogram lpg = log_periodogram(pg);
  MonotoneStepFit fit;
  fit.n = pg.n;
  fit.freqs = pg.freqs;
  fit.levels = pava_antitonic<double>(lpg.values).levels.array().exp();
  return fit;
}

ConcaveFit estimate_Fhat(const Periodogram& pg) {
  check_periodogram(pg);
  const int k_max = pg.k_max();
  Diagram<double> diagram;
  diagram.x.resize(k_max + 1);
  diagram.h.resize(k_max + 1);
  diagram.x[0] = 0.0;
  diagram.h[0] = 0.0;
  const double width = kTwoPi / pg.n;
  for (int k = 0; k < k_max; ++k) {
    diagram.x[k + 1] = pg.freqs[k];
    diagram.h[k + 1] = diagram.h[k] + width * pg.ordinates[k];
  }
  const ConcaveMajorant<double> cm = concave_majorant(diagram);
  ConcaveFit fit;
  fit.knots = cm.knot_x;
  fit.values = cm.knot_y;
  fit.slopes = cm.slopes;
  return fit;
}

double evaluate(const MonotoneStepFit& fit, double t) {
  if (!(t > 0.0 && t <= kPi)) throw ParameterError("evaluate: t must lie in (0, pi]");
  long long k = static_cast<long long>(std::floor(fit.n * t / kTwoPi + 1e-9));
  k = std::max<long long>(1, std::min<long long>(k, fit.levels.size()));
  return fit.levels[static_cast<Eigen::Index>(k - 1)];
}

void write_csv(const MonotoneStepFit& fit, std::ostream& out) {
  out << "lambda,level\n";
  for (Eigen::Index i = 0; i < fit.levels.size(); ++i) {
    out << format_double(fit.freqs[i]) << ',' << format_double(fit.levels[i]) << '\n';
  }
}

}  // namespace monospec
