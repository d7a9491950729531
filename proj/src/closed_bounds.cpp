#include "magineq/closed_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/tools/roots.hpp>

#include "magineq/errors.hpp"

namespace magineq {

namespace {

constexpr double pi = std::numbers::pi;

// Exponent d(p-2)/(2p) of the interpolation (p > 2).
double gn_exponent(int d, double p) { return d * (p - 2.0) / (2.0 * p); }

void require_supercritical(const ProblemParams& params) {
  params.validate();
  if (!(params.p > 2.0)) throw DomainError("bound requires p > 2");
}

void require_subcritical(const ProblemParams& params) {
  params.validate();
  if (!(params.p > 1.0 && params.p < 2.0)) throw DomainError("bound requires 1 < p < 2");
}

template <class F>
double solve_increasing(F f, double lo, double hi) {
  boost::uintmax_t iters = 200;
  auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, boost::math::tools::eps_tolerance<double>(48), iters);
  if (iters >= 200) throw SolverError("root finder did not converge");
  return 0.5 * (a + b);
}

}  // namespace

LossThallerMix mix_constant(double p, double eta) {
  if (!(p >= 2.0) || !std::isfinite(eta)) throw InputError("mix constant needs p >= 2 and finite eta");
  const double disc = eta * eta + p - 1.0;
  if (disc < 0.0) throw InputError("negative discriminant in the mix constant");
  const double root = std::sqrt(disc);
  LossThallerMix mix;
  mix.p = p;
  mix.eta = eta;
  // 1/(root + eta) avoids cancellation for large positive eta.
  mix.c = eta >= 0.0 ? 1.0 / (root + eta) : (root - eta) / (p - 1.0);
  return mix;
}

double mu_interp_kink(const ProblemParams& params) {
  require_supercritical(params);
  const double a = gn_exponent(params.d, params.p);
  return params.Lambda * (1.0 - a) / a;
}

double mu_interp(const ProblemParams& params, const GNConstants& gn, double alpha) {
  require_supercritical(params);
  const double lambda = params.Lambda;
  if (alpha < -lambda) throw DomainError("mu_interp needs alpha >= -Lambda");
  if (alpha == -lambda) return 0.0;
  const double a = gn_exponent(params.d, params.p);
  if (lambda > 0.0 && alpha <= mu_interp_kink(params)) {
    return gn.S_p * (alpha + lambda) * std::pow(lambda, -a);
  }
  return gn.C_p * std::pow(alpha, 1.0 - a);
}

double mu_LT(double p, double B, double alpha, double C_p) {
  if (!(p > 2.0)) throw DomainError("mu_LT requires p > 2");
  if (!(B > 0.0)) throw DomainError("mu_LT requires B > 0");
  if (!(alpha > -B)) throw DomainError("mu_LT requires alpha > -B");
  const double c = mix_constant(p, alpha * (p - 2.0) / (2.0 * B)).c;
  return C_p * std::pow(1.0 - c * c, 1.0 - 2.0 / p) * std::pow(alpha + c * B, 2.0 / p);
}

double beta_star(const ProblemParams& params, const GNConstants& gn) {
  require_subcritical(params);
  const double d = params.d;
  const double p = params.p;
  const double n = 2.0 * p + d * (2.0 - p);
  return std::pow(n / (d * (2.0 - p)) * params.Lambda / gn.C_p, n / (2.0 * p));
}

double nu_interp(const ProblemParams& params, const GNConstants& gn, double beta) {
  require_subcritical(params);
  if (beta < 0.0) throw DomainError("nu_interp needs beta >= 0");
  const double d = params.d;
  const double p = params.p;
  const double lambda = params.Lambda;
  const double n = 2.0 * p + d * (2.0 - p);
  if (lambda <= 0.0 || beta >= beta_star(params, gn)) return gn.C_p * std::pow(beta, 2.0 * p / n);
  const double x = d * (2.0 - p) / n;
  const double slope = std::pow(lambda, d * (p - 2.0) / (2.0 * p)) * (2.0 * p / (d * (2.0 - p))) *
                       std::pow(x, n / (2.0 * p)) * std::pow(gn.C_p, n / (2.0 * p));
  return lambda + beta * slope;
}

NuLTResult nu_LT(double p, double B, double beta, const GNConstants& gn) {
  if (!(p > 1.0 && p < 2.0)) throw DomainError("nu_LT requires 1 < p < 2");
  if (!(B > 0.0)) throw DomainError("nu_LT requires B > 0");
  if (!(beta > 0.0)) throw DomainError("nu_LT requires beta > 0");
  const double log_k = std::log(B) - std::log((2.0 - p) * gn.C_p) - 0.5 * p * std::log(beta);
  // Unknown t = log(1 - c^2); g is decreasing in t.
  auto g = [&](double t) { return 0.5 * std::log(-std::expm1(t)) - 0.5 * p * t - log_k; };
  double hi = -1.0;
  while (g(hi) > 0.0) hi *= 0.5;
  double lo = -1.0;
  while (g(lo) < 0.0) lo *= 2.0;
  if (hi <= lo) hi = -1.0;
  const double t = solve_increasing([&](double s) { return -g(s); }, lo, hi);
  const double s = std::exp(t);
  const double c = std::sqrt(-std::expm1(t));

  NuLTResult out;
  out.mix.p = p;
  out.mix.eta = std::numeric_limits<double>::quiet_NaN();
  out.mix.c = c;
  out.mix.c_star = c;
  out.mix.residual = std::abs(std::log(c) - 0.5 * p * std::log(s) - log_k);
  out.value = c * B + gn.C_p * std::pow(beta, 0.5 * p) * std::pow(s, 1.0 - 0.5 * p);
  return out;
}

double xi_constant_field(double B, double gamma) {
  if (!(B > 0.0)) throw DomainError("xi_constant_field requires B > 0");
  if (!(gamma >= 0.0)) throw DomainError("xi_constant_field requires gamma >= 0");
  if (gamma == 0.0) return B;
  const double c = mix_constant(2.0, gamma / B).c;
  return B * c + gamma * (std::log(2.0 * pi * c / B) + 2.0);
}

double gauss_profile_function(double theta, double B, double alpha, double sigma) {
  return B * B * std::pow(sigma, 2.0 - theta) + 4.0 * alpha * std::pow(sigma, 1.0 - theta) +
         4.0 * std::pow(sigma, -theta);
}

GaussianOptimum mu_gauss(double p, double B, double alpha) {
  if (!(p > 2.0)) throw DomainError("mu_gauss requires p > 2");
  if (!(B >= 0.0)) throw DomainError("mu_gauss requires B >= 0");
  if (!(alpha > -B)) throw DomainError("mu_gauss requires alpha > -B");
  const double theta = 2.0 / p;
  const double lin = 4.0 * alpha * (1.0 - theta);
  const double disc = lin * lin + 16.0 * theta * (2.0 - theta) * B * B;
  const double denom = lin + std::sqrt(disc);
  if (!(denom > 0.0)) throw DomainError("no positive Gaussian scale");
  GaussianOptimum g;
  g.theta = theta;
  // Positive root of (2-theta) B^2 s^2 + 4 alpha (1-theta) s - 4 theta, in
  // the form that stays finite as B -> 0.
  g.sigma = 8.0 * theta / denom;
  g.quotient_value = 0.125 * std::pow(2.0 * pi, 1.0 - theta) * std::pow(p, theta) *
                     gauss_profile_function(theta, B, alpha, g.sigma);
  return g;
}

GaussianOptimum nu_gauss(double p, double B, double beta) {
  if (!(p > 1.0 && p < 2.0)) throw DomainError("nu_gauss requires 1 < p < 2");
  if (!(B >= 0.0)) throw DomainError("nu_gauss requires B >= 0");
  if (!(beta > 0.0)) throw DomainError("nu_gauss requires beta > 0");
  const double theta = 2.0 / p;
  const double kappa = beta * std::pow(theta, theta) * std::pow(pi, theta - 1.0);
  // sigma^2 Q'(sigma) as a function of log sigma; increasing.
  auto h = [&](double ls) {
    const double s = std::exp(ls);
    return -1.0 + 0.25 * B * B * s * s + (theta - 1.0) * kappa * std::pow(s, theta);
  };
  double lo = 0.0, hi = 0.0;
  while (h(lo) > 0.0) lo -= 1.0;
  while (h(hi) < 0.0) {
    hi += 1.0;
    if (hi > 700.0) throw SolverError("nu_gauss minimizer not bracketed");
  }
  if (lo == hi) lo -= 1.0;
  const double sigma = std::exp(solve_increasing(h, lo, hi));
  GaussianOptimum g;
  g.theta = theta;
  g.kappa = kappa;
  g.sigma = sigma;
  g.quotient_value = 1.0 / sigma + 0.25 * B * B * sigma + kappa * std::pow(sigma, theta - 1.0);
  return g;
}

double gn_magnetic_bound(const ProblemParams& params, const GNConstants& gn, double alpha, double theta_interp) {
  require_supercritical(params);
  const double p = params.p;
  if (!(theta_interp >= 1.0 - 2.0 / p && theta_interp < 1.0)) {
    throw DomainError("theta must lie in [1 - 2/p, 1)");
  }
  if (!(alpha > -params.Lambda)) throw DomainError("gn_magnetic_bound requires alpha > -Lambda");
  const double gap_factor =
      params.Lambda > 0.0 ? std::min(1.0, std::pow(1.0 + alpha / params.Lambda, 1.0 - 2.0 / p)) : 1.0;
  return std::pow(mu_interp(params, gn, alpha), 0.25 * (p * theta_interp - p + 2.0)) *
         std::pow(gap_factor * gn.S_p, 0.25 * p * (1.0 - theta_interp));
}

}  // namespace magineq
