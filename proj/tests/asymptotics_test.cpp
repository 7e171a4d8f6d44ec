#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "monospec/asymptotics.hpp"
#include "monospec/errors.hpp"
#include "monospec/models.hpp"
#include "monospec/rng.hpp"

using namespace monospec;

namespace {
constexpr double kPi = std::numbers::pi;

ChernoffSamplerConfig config(int count, double half_width = 4.0, double step = 0.005) {
  ChernoffSamplerConfig cfg;
  cfg.half_width = half_width;
  cfg.step = step;
  cfg.sample_count = count;
  return cfg;
}
}  // namespace

TEST_CASE("sampler configuration constraints are enforced") {
  RngStream rng(1);
  CHECK_THROWS_AS(chernoff_sample(config(10, 2.0, 0.005), rng), ParameterError);
  CHECK_THROWS_AS(chernoff_sample(config(10, 4.0, 0.02), rng), ParameterError);
  CHECK_THROWS_AS(chernoff_sample(config(10, 4.0, 0.003), rng), ParameterError);
  CHECK_THROWS_AS(chernoff_sample(config(10, 4.0, -0.005), rng), ParameterError);
  CHECK_THROWS_AS(chernoff_sample(config(0), rng), ParameterError);
  CHECK_NOTHROW(chernoff_sample(config(2, 3.0, 0.01), rng));
}

TEST_CASE("sampling is deterministic and consumption-independent") {
  RngStream a(7), b(7);
  const auto s1 = chernoff_sample(config(20), a);
  b.next_u64();
  b.gaussian();
  const auto s2 = chernoff_sample(config(20), b);
  CHECK(s1 == s2);
}

TEST_CASE("samples are symmetric, concentrated, and inside the grid") {
  RngStream rng(11);
  const int count = 20000;
  const auto s = chernoff_sample(config(count), rng);
  REQUIRE(static_cast<int>(s.size()) == count);
  double mean = 0.0;
  for (double v : s) mean += v;
  mean /= count;
  double var = 0.0;
  int far = 0;
  for (double v : s) {
    var += (v - mean) * (v - mean);
    far += std::abs(v) > 3.0;
    CHECK(std::abs(v) <= 4.0);
  }
  var /= count - 1;
  const double sd = std::sqrt(var);
  CHECK(std::abs(mean) <= 3.0 * sd / std::sqrt(static_cast<double>(count)));
  CHECK(static_cast<double>(far) / count <= 0.001);
  // dispersion of the argmax law, frozen from an independent fine-grid run
  CHECK(sd == doctest::Approx(0.52).epsilon(0.05));
}

TEST_CASE("doubling the grid half-width barely moves the quantiles") {
  RngStream a(13), b(13);
  const int count = 20000;
  const auto narrow = chernoff_sample(config(count, 4.0, 0.005), a);
  const auto wide = chernoff_sample(config(count, 8.0, 0.005), b);
  for (double p : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    CHECK(std::abs(sample_quantile(narrow, p) - sample_quantile(wide, p)) < 0.01);
  }
}

TEST_CASE("limit constants evaluate their closed forms") {
  CHECK(limit_constant_fhat(1.0, -1.0) == doctest::Approx(2.0 * std::cbrt(kPi)).epsilon(1e-15));
  const double pi4 = kPi * kPi * kPi * kPi;
  CHECK(limit_constant_ftilde_log(1.0, -1.0) ==
        doctest::Approx(2.0 * std::cbrt(pi4 / 3.0)).epsilon(1e-15));
  CHECK(limit_constant_ftilde(1.0, -1.0) ==
        doctest::Approx(2.0 * std::cbrt(pi4 / 3.0)).epsilon(1e-15));
  CHECK(limit_constant_fhat(1.0, -1.0) == doctest::Approx(2.929).epsilon(2e-3));
  // homogeneity: f -> c f multiplies the density-scale constant by c
  const double c = 1.7;
  CHECK(limit_constant_fhat(c * 2.0, c * -0.5) ==
        doctest::Approx(c * limit_constant_fhat(2.0, -0.5)).epsilon(1e-13));
  // log-scale constant is scale invariant
  CHECK(limit_constant_ftilde_log(c * 2.0, c * -0.5) ==
        doctest::Approx(limit_constant_ftilde_log(2.0, -0.5)).epsilon(1e-13));
}

TEST_CASE("constant ratio identity holds for models") {
  const double ratio = kPi / std::cbrt(3.0);
  for (double t0 : {0.4, 1.0, 2.2}) {
    for (const SpectralModel& m :
         {example1(), example2(), SpectralModel{Ar1{0.8, 1.3}}, SpectralModel{Arfima0d0{0.3, 0.7}}}) {
      const double fhat_c = limit_constant_fhat(m, t0);
      const double ftilde_c = limit_constant_ftilde(m, t0);
      CHECK(ftilde_c / fhat_c == doctest::Approx(ratio).epsilon(1e-12));
      CHECK(ftilde_c > fhat_c);
      const double f = spectral_density(m, t0);
      CHECK(limit_constant_ftilde(m, t0) ==
            doctest::Approx(f * limit_constant_ftilde_log(m, t0)).epsilon(1e-12));
    }
  }
}

TEST_CASE("nonnegative slope violates the limit hypothesis") {
  CHECK_THROWS_AS(limit_constant_fhat(SpectralModel{WhiteNoise{1.0}}, 1.0), HypothesisError);
  CHECK_THROWS_AS(limit_constant_ftilde_log(SpectralModel{Ar1{-0.5, 1.0}}, 1.0),
                  HypothesisError);
  CHECK_THROWS_AS(limit_constant_ftilde(1.0, 0.0), HypothesisError);
  CHECK_THROWS_AS(limit_constant_fhat(1.0, 0.3), HypothesisError);
}

TEST_CASE("normalized error samples are deterministic and thread-invariant") {
  LimitExperiment exp;
  exp.model = example1();
  exp.n = 256;
  exp.reps = 40;
  RngStream a(3), b(3), c(3);
  const auto s1 = normalized_error_samples(exp, a, 1);
  const auto s2 = normalized_error_samples(exp, b, 1);
  const auto s4 = normalized_error_samples(exp, c, 4);
  CHECK(s1 == s2);
  CHECK(s1 == s4);
  REQUIRE(s1.size() == 40);
}

TEST_CASE("experiment validation rejects bad inputs") {
  LimitExperiment exp;
  exp.model = example1();
  exp.n = 256;
  exp.reps = 10;
  RngStream rng(3);
  exp.t0 = 0.0;
  CHECK_THROWS_AS(normalized_error_samples(exp, rng), ParameterError);
  exp.t0 = 1.0;
  exp.n = 4;
  CHECK_THROWS_AS(normalized_error_samples(exp, rng), ParameterError);
  exp.n = 256;
  exp.model = SpectralModel{WhiteNoise{1.0}};
  CHECK_THROWS_AS(normalized_error_samples(exp, rng), HypothesisError);
}

TEST_CASE("normalized spread shrinks at the cube-root rate") {
  LimitExperiment exp;
  exp.model = example1();
  exp.estimator = EstimatorKind::fhat;
  exp.reps = 800;

  auto raw_iqr_at = [&](int n) {
    LimitExperiment e = exp;
    e.n = n;
    RngStream rng(1234);
    std::vector<double> s = normalized_error_samples(e, rng, 4);
    // undo the n^{1/3}/C normalization to recover the raw error spread
    const double scale = limit_constant_fhat(e.model, e.t0) / std::cbrt(static_cast<double>(n));
    const double iqr = sample_quantile(s, 0.75) - sample_quantile(s, 0.25);
    return scale * iqr;
  };
  const double ratio = raw_iqr_at(1000) / raw_iqr_at(8000);
  CHECK(ratio >= 1.6);
  CHECK(ratio <= 2.4);
}

TEST_CASE("ks distance basics") {
  const std::vector<double> a = {1.0, 2.0, 3.0};
  CHECK(ks_distance(a, a) == 0.0);
  const std::vector<double> b = {10.0, 11.0};
  CHECK(ks_distance(a, b) == 1.0);
  CHECK(ks_distance(b, a) == 1.0);
  CHECK_THROWS_AS(ks_distance({}, a), ParameterError);
  CHECK_THROWS_AS(ks_distance(a, {}), ParameterError);
  const std::vector<double> c = {1.0, 2.0};
  const std::vector<double> d = {1.5, 2.5};
  CHECK(ks_distance(c, d) == doctest::Approx(0.5));
}

TEST_CASE("ks distance between same-law samples is small") {
  RngStream rng(17);
  std::vector<double> a(10000), b(10000);
  for (auto& v : a) v = rng.gaussian();
  for (auto& v : b) v = rng.gaussian();
  CHECK(ks_distance(a, b) < 0.03);
}

TEST_CASE("type-7 quantiles interpolate order statistics") {
  const std::vector<double> v = {4.0, 1.0, 3.0, 2.0};
  CHECK(sample_quantile(v, 0.0) == 1.0);
  CHECK(sample_quantile(v, 1.0) == 4.0);
  CHECK(sample_quantile(v, 0.5) == doctest::Approx(2.5));
  CHECK(sample_quantile(v, 0.25) == doctest::Approx(1.75));
  CHECK(sample_quantile({5.5}, 0.3) == 5.5);
  CHECK_THROWS_AS(sample_quantile({}, 0.5), ParameterError);
  CHECK_THROWS_AS(sample_quantile(v, 1.5), ParameterError);
  CHECK_THROWS_AS(sample_quantile(v, -0.1), ParameterError);
}
