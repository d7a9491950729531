#pragma once

#include <limits>

#include "magineq/config.hpp"
#include "magineq/gn_ground_states.hpp"

namespace magineq {

/// Loss-Thaller mixing constant, and for p < 2 the optimal c_*.
struct LossThallerMix {
  double p = 3.0;
  double eta = 0.0;
  double c = 1.0;
  double c_star = std::numeric_limits<double>::quiet_NaN();
  /// |log residual| of the c_* equation.
  double residual = 0.0;
};

/// Optimal Gaussian scale and the resulting quotient.
struct GaussianOptimum {
  double theta = 0.0;
  double sigma = 0.0;
  double quotient_value = 0.0;
  /// Coefficient of sigma^{theta-1} in the p < 2 quotient; NaN for p > 2.
  double kappa = std::numeric_limits<double>::quiet_NaN();
};

/// c = (sqrt(eta^2 + p - 1) - eta)/(p - 1), p >= 2.
LossThallerMix mix_constant(double p, double eta);

/// Piecewise lower bound for mu_B(alpha), p in (2, 2*).
double mu_interp(const ProblemParams& params, const GNConstants& gn, double alpha);
/// Kink of mu_interp: Lambda (2p - d(p-2)) / (d(p-2)).
double mu_interp_kink(const ProblemParams& params);

/// Two-dimensional constant-field bound, alpha > -B, B > 0.
double mu_LT(double p, double B, double alpha, double C_p);

/// Piecewise lower bound for nu_B(beta), p in (1, 2).
double nu_interp(const ProblemParams& params, const GNConstants& gn, double beta);
double beta_star(const ProblemParams& params, const GNConstants& gn);

struct NuLTResult {
  double value = 0.0;
  LossThallerMix mix;
};

/// Two-dimensional constant-field bound for p < 2 with the optimal c_*.
NuLTResult nu_LT(double p, double B, double beta, const GNConstants& gn);

/// Sharp log-Sobolev constant for a constant field in two dimensions:
/// B c + gamma log(2 pi e^2 c / B) with c = sqrt(eta^2 + 1) - eta, eta = gamma/B.
double xi_constant_field(double B, double gamma);

/// Gaussian upper bound for mu_B(alpha), two dimensions, p > 2.
GaussianOptimum mu_gauss(double p, double B, double alpha);
/// Gaussian upper bound for nu_B(beta), two dimensions, p < 2.
GaussianOptimum nu_gauss(double p, double B, double beta);

/// Scale-free Gaussian quotient f(sigma) = B^2 sigma^{2-theta} + 4 alpha
/// sigma^{1-theta} + 4 sigma^{-theta}.
double gauss_profile_function(double theta, double B, double alpha, double sigma);

/// Constant of the magnetic Gagliardo-Nirenberg inequality with exponent
/// theta_interp in [1 - 2/p, 1).
double gn_magnetic_bound(const ProblemParams& params, const GNConstants& gn, double alpha, double theta_interp);

}  // namespace magineq
