#pragma once

#include <Eigen/Dense>

#include "monospec/models.hpp"
#include "monospec/rng.hpp"

namespace monospec {

struct SimOptions {
  long arfima_truncation = 0;  // 0 selects max(10n, 10^4)
};

// n i.i.d. Gaussian(0, sigma^2) values.
Eigen::VectorXd gen_white_noise(int n, double sigma, RngStream& rng);

// Exact stationary AR(1) path X_1..X_n: X_0 ~ N(0, sigma^2/(1-a^2)), then
// X_k = a X_{k-1} + sigma eps_k. No burn-in needed.
Eigen::VectorXd gen_ar1(int n, double a, double sigma, RngStream& rng);

// MA(inf) coefficients of (1-B)^{-d}: psi_0 = 1, psi_j = psi_{j-1}(j-1+d)/j.
Eigen::VectorXd arfima_ma_coefficients(double d, long truncation);

long arfima_default_truncation(int n);

// Truncated moving-average ARFIMA(0,d,0) path:
//   X_k = sigma * sum_{j=0}^{M} psi_j eps_{k-j}
// with M pre-sample innovations. Refuses M < n rather than degrade silently.
Eigen::VectorXd gen_arfima(int n, double d, double sigma, long truncation, RngStream& rng);

// Pointwise sum of independently generated component paths; component i uses
// the derived stream rng.child(i).
Eigen::VectorXd gen_sum(const Sum& model, int n, RngStream& rng, const SimOptions& opts = {});

Eigen::VectorXd simulate_path(const SpectralModel& model, int n, RngStream& rng,
                              const SimOptions& opts = {});

// Residuals of the least-squares line fit against time 1..n.
Eigen::VectorXd linear_detrend(const Eigen::VectorXd& x);

}  // namespace monospec
