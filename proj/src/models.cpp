#include "monospec/models.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "monospec/errors.hpp"

namespace monospec {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void validate_leaf_sigma(double sigma, const char* kind) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    std::ostringstream msg;
    msg << kind << ": sigma must be positive, got " << sigma;
    throw ParameterError(msg.str());
  }
}

bool contains_singular_arfima(const SpectralModel& model) {
  return std::visit(
      [](const auto& node) -> bool {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Arfima0d0>) {
          return node.d > 0.0;
        } else if constexpr (std::is_same_v<T, Sum>) {
          for (const auto& c : node.components)
            if (contains_singular_arfima(c)) return true;
          return false;
        } else {
          return false;
        }
      },
      model.node);
}

void check_density_domain(const SpectralModel& model, double lambda, bool open_right_closed) {
  const bool ok = open_right_closed ? (lambda > 0.0 && lambda <= kPi)
                                    : (lambda > 0.0 && lambda < kPi);
  if (ok) return;
  if (lambda == 0.0 && contains_singular_arfima(model))
    throw ParameterError("spectral density is singular at lambda = 0 for d > 0");
  throw ParameterError(open_right_closed ? "lambda must lie in (0, pi]"
                                         : "lambda must lie in (0, pi)");
}

struct Regime {
  bool any_decreasing = false;
  bool any_increasing = false;
};

Regime regime_of(const SpectralModel& model) {
  return std::visit(
      [](const auto& node) -> Regime {
        using T = std::decay_t<decltype(node)>;
        Regime r;
        if constexpr (std::is_same_v<T, Ar1>) {
          if (node.a > 0.0) r.any_decreasing = true;
          if (node.a < 0.0) r.any_increasing = true;
        } else if constexpr (std::is_same_v<T, Arfima0d0>) {
          if (node.d > 0.0) r.any_decreasing = true;
          if (node.d < 0.0) r.any_increasing = true;
        } else if constexpr (std::is_same_v<T, Sum>) {
          for (const auto& c : node.components) {
            const Regime cr = regime_of(c);
            r.any_decreasing = r.any_decreasing || cr.any_decreasing;
            r.any_increasing = r.any_increasing || cr.any_increasing;
          }
        }
        return r;
      },
      model.node);
}

SpectralModel parse_node(const nlohmann::json& j) {
  if (!j.is_object()) throw ParameterError("model JSON: each node must be an object");
  if (!j.contains("type") || !j.at("type").is_string())
    throw ParameterError("model JSON: missing string field 'type'");
  const std::string type = j.at("type").get<std::string>();
  const auto number_field = [&j](const char* name, bool required, double fallback) {
    if (!j.contains(name)) {
      if (required) {
        throw ParameterError(std::string("model JSON: missing numeric field '") + name + "'");
      }
      return fallback;
    }
    if (!j.at(name).is_number())
      throw ParameterError(std::string("model JSON: field '") + name + "' must be numeric");
    return j.at(name).get<double>();
  };
  if (type == "white") {
    return SpectralModel{WhiteNoise{number_field("sigma", false, 1.0)}};
  }
  if (type == "ar1") {
    return SpectralModel{Ar1{number_field("a", true, 0.0), number_field("sigma", false, 1.0)}};
  }
  if (type == "arfima") {
    return SpectralModel{
        Arfima0d0{number_field("d", true, 0.0), number_field("sigma", false, 1.0)}};
  }
  if (type == "sum") {
    if (!j.contains("components") || !j.at("components").is_array())
      throw ParameterError("model JSON: sum requires an array field 'components'");
    Sum sum;
    for (const auto& c : j.at("components")) sum.components.push_back(parse_node(c));
    return SpectralModel{std::move(sum)};
  }
  throw ParameterError("model JSON: unknown type '" + type + "'");
}

nlohmann::ordered_json to_json_node(const SpectralModel& model) {
  return std::visit(
      [](const auto& node) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(node)>;
        nlohmann::ordered_json j;
        if constexpr (std::is_same_v<T, WhiteNoise>) {
          j["type"] = "white";
          j["sigma"] = node.sigma;
        } else if constexpr (std::is_same_v<T, Ar1>) {
          j["type"] = "ar1";
          j["a"] = node.a;
          j["sigma"] = node.sigma;
        } else if constexpr (std::is_same_v<T, Arfima0d0>) {
          j["type"] = "arfima";
          j["d"] = node.d;
          j["sigma"] = node.sigma;
        } else {
          j["type"] = "sum";
          j["components"] = nlohmann::ordered_json::array();
          for (const auto& c : node.components) j["components"].push_back(to_json_node(c));
        }
        return j;
      },
      model.node);
}

}  // namespace

void validate(const SpectralModel& model) {
  std::visit(
      [](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, WhiteNoise>) {
          validate_leaf_sigma(node.sigma, "white noise");
        } else if constexpr (std::is_same_v<T, Ar1>) {
          validate_leaf_sigma(node.sigma, "ar1");
          if (!(std::abs(node.a) < 1.0))
            throw ParameterError("ar1: |a| < 1 required for stationarity");
        } else if constexpr (std::is_same_v<T, Arfima0d0>) {
          validate_leaf_sigma(node.sigma, "arfima");
          if (!(std::abs(node.d) < 0.5)) throw ParameterError("arfima: |d| < 1/2 required");
        } else {
          if (node.components.empty()) throw ParameterError("sum: component list is empty");
          for (const auto& c : node.components) validate(c);
        }
      },
      model.node);
}

double spectral_density(const SpectralModel& model, double lambda) {
  check_density_domain(model, lambda, true);
  return std::visit(
      [lambda](const auto& node) -> double {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, WhiteNoise>) {
          return node.sigma * node.sigma / kTwoPi;
        } else if constexpr (std::is_same_v<T, Ar1>) {
          const double denom = 1.0 - 2.0 * node.a * std::cos(lambda) + node.a * node.a;
          return node.sigma * node.sigma / (kTwoPi * denom);
        } else if constexpr (std::is_same_v<T, Arfima0d0>) {
          const double base = 2.0 * std::sin(lambda / 2.0);
          return node.sigma * node.sigma / kTwoPi * std::pow(base, -2.0 * node.d);
        } else {
          double f = 0.0;
          for (const auto& c : node.components) f += spectral_density(c, lambda);
          return f;
        }
      },
      model.node);
}

double spectral_density_deriv(const SpectralModel& model, double lambda) {
  check_density_domain(model, lambda, false);
  return std::visit(
      [&, lambda](const auto& node) -> double {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, WhiteNoise>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, Ar1>) {
          const double denom = 1.0 - 2.0 * node.a * std::cos(lambda) + node.a * node.a;
          return -node.sigma * node.sigma * node.a * std::sin(lambda) / (kPi * denom * denom);
        } else if constexpr (std::is_same_v<T, Arfima0d0>) {
          const double f = node.sigma * node.sigma / kTwoPi *
                           std::pow(2.0 * std::sin(lambda / 2.0), -2.0 * node.d);
          return -node.d / std::tan(lambda / 2.0) * f;
        } else {
          double g = 0.0;
          for (const auto& c : node.components) g += spectral_density_deriv(c, lambda);
          return g;
        }
      },
      model.node);
}

bool strictly_decreasing_regime(const SpectralModel& model) {
  const Regime r = regime_of(model);
  return r.any_decreasing && !r.any_increasing;
}

double process_variance(const SpectralModel& model) {
  return std::visit(
      [](const auto& node) -> double {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, WhiteNoise>) {
          return node.sigma * node.sigma;
        } else if constexpr (std::is_same_v<T, Ar1>) {
          return node.sigma * node.sigma / (1.0 - node.a * node.a);
        } else if constexpr (std::is_same_v<T, Arfima0d0>) {
          const double g1 = std::tgamma(1.0 - 2.0 * node.d);
          const double g2 = std::tgamma(1.0 - node.d);
          return g1 / (g2 * g2) * node.sigma * node.sigma;
        } else {
          double v = 0.0;
          for (const auto& c : node.components) v += process_variance(c);
          return v;
        }
      },
      model.node);
}

SpectralModel example1() {
  Sum sum;
  sum.components.push_back(SpectralModel{Ar1{0.5, 1.0}});
  sum.components.push_back(SpectralModel{Ar1{0.7, 1.0}});
  sum.components.push_back(SpectralModel{Ar1{0.9, 1.0}});
  return SpectralModel{std::move(sum)};
}

SpectralModel example2() {
  Sum sum;
  sum.components.push_back(SpectralModel{Arfima0d0{0.2, 1.0}});
  sum.components.push_back(SpectralModel{Ar1{0.5, 1.0}});
  return SpectralModel{std::move(sum)};
}

SpectralModel model_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("model JSON parse failure: ") + e.what());
  }
  SpectralModel model = parse_node(j);
  validate(model);
  return model;
}

std::string model_to_json(const SpectralModel& model) {
  return to_json_node(model).dump();
}

}  // namespace monospec
