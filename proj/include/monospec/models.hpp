#pragma once

#include <string>
#include <variant>
#include <vector>

namespace monospec {

// Closed-form stationary process models with exact spectral densities.
// Densities are per-radian on (-pi, pi]; all innovations are Gaussian.

struct WhiteNoise {
  double sigma = 1.0;
};

struct Ar1 {
  double a = 0.0;
  double sigma = 1.0;
};

struct Arfima0d0 {
  double d = 0.0;
  double sigma = 1.0;
};

struct SpectralModel;

struct Sum {
  std::vector<SpectralModel> components;  // mutually independent processes
};

struct SpectralModel {
  std::variant<WhiteNoise, Ar1, Arfima0d0, Sum> node;
};

// Throws ParameterError unless |a| < 1, |d| < 1/2, sigma > 0 on every leaf
// and every Sum is nonempty.
void validate(const SpectralModel& model);

// f(lambda) for lambda in (0, pi].
double spectral_density(const SpectralModel& model, double lambda);

// Exact analytic f'(lambda) for lambda in (0, pi).
double spectral_density_deriv(const SpectralModel& model, double lambda);

// True when f is strictly decreasing on (0, pi): every AR(1) leaf has a >= 0,
// every ARFIMA leaf has d >= 0, and at least one leaf has a > 0 or d > 0.
bool strictly_decreasing_regime(const SpectralModel& model);

// Analytic process variance (AR(1): sigma^2/(1-a^2); ARFIMA(0,d,0):
// Gamma(1-2d)/Gamma(1-d)^2 * sigma^2; sums add).
double process_variance(const SpectralModel& model);

// Built-in test models: sum of three AR(1) processes with a = 0.5, 0.7, 0.9,
// and ARFIMA(0, 0.2, 0) + AR(1) with a = 0.5; sigma = 1 per component.
SpectralModel example1();
SpectralModel example2();

// JSON form: {"type":"white"|"ar1"|"arfima"|"sum", ...} with fields sigma
// (optional, default 1), a, d, components. Throws ParameterError on
// malformed documents.
SpectralModel model_from_json(const std::string& text);
std::string model_to_json(const SpectralModel& model);

}  // namespace monospec
