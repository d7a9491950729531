#include "magineq/el_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/tools/roots.hpp>

#include "magineq/closed_bounds.hpp"
#include "magineq/errors.hpp"
#include "parallel.hpp"

namespace magineq {

double supercritical_source(double p, double B, double alpha, double r, double v) {
  return (0.25 * B * B * r * r + alpha) * v - signed_power(v, p);
}

double subcritical_source(double p, double B, double nu, double r, double v) {
  return (0.25 * B * B * r * r - nu) * v + signed_power(v, p);
}

double magnetic_window(double B, double alpha, const SolverConfig& config) {
  const double base = config.r_max > 0.0 ? config.r_max : 0.0;
  if (!(B > 0.0)) return base > 0.0 ? base : 40.0;
  return std::max(base, 2.0 * std::sqrt(50.0 * (std::abs(alpha) + 1.0)) / B);
}

namespace {

void check_super(double p, double B, double alpha) {
  if (!(p > 2.0) || !std::isfinite(p)) throw DomainError("mu_EL requires p > 2");
  if (!(B >= 0.0)) throw InputError("field strength must be nonnegative");
  if (B > 0.0 ? !(alpha > -B) : !(alpha > 0.0)) throw DomainError("mu_EL requires alpha above the spectral gap");
}

void check_sub(double p, double B, double nu) {
  if (!(p > 1.0 && p < 2.0)) throw DomainError("nu_EL requires 1 < p < 2");
  if (!(B >= 0.0)) throw InputError("field strength must be nonnegative");
  if (!(nu > B)) throw DomainError("nu must exceed the spectral gap B");
}

RadialShooter super_shooter(double p, double B, double alpha, const SolverConfig& config) {
  RadialShooter s;
  s.d = 2;
  s.source = [p, B, alpha](double r, double v) { return supercritical_source(p, B, alpha, r, v); };
  s.r_max = magnetic_window(B, alpha, config);
  return s;
}

RadialShooter sub_shooter(double p, double B, double nu, const SolverConfig& config) {
  RadialShooter s;
  s.d = 2;
  s.source = [p, B, nu](double r, double v) { return subcritical_source(p, B, nu, r, v); };
  s.r_max = magnetic_window(B, nu, config);
  s.compact_support = true;
  return s;
}

}  // namespace

ShootOutcome shoot_supercritical(double p, double B, double alpha, double a, const SolverConfig& config) {
  check_super(p, B, alpha);
  return shoot(super_shooter(p, B, alpha, config), a, config);
}

ShootOutcome shoot_subcritical(double p, double B, double nu, double a, const SolverConfig& config) {
  check_sub(p, B, nu);
  return shoot(sub_shooter(p, B, nu, config), a, config);
}

ELPoint solve_mu_el(double p, double B, double alpha, const SolverConfig& config) {
  check_super(p, B, alpha);
  const RadialShooter shooter = super_shooter(p, B, alpha, config);
  const double start = std::pow(std::max(alpha + 2.0 * B, 1e-3), 1.0 / (p - 2.0));
  const ShootingSolution sol = solve_decaying(shooter, start, config.amplitude_min, config);

  ELPoint pt;
  pt.parameter = alpha;
  pt.amplitude = sol.amplitude;
  pt.profile = sol.profile;
  pt.truncation_radius = sol.truncation_radius;
  pt.window = sol.window;
  pt.value = std::pow(weighted_integral(pt.profile, p), 1.0 - 2.0 / p);
  pt.residual = ode_residual(pt.profile, shooter.source);
  return pt;
}

ELPoint solve_nu_el(double p, double B, double nu, const SolverConfig& config) {
  check_sub(p, B, nu);
  const RadialShooter shooter = sub_shooter(p, B, nu, config);
  // Below this amplitude the trajectory starts upward.
  const double a_floor = std::pow(nu, -1.0 / (2.0 - p)) * (1.0 + 1e-9);
  const AmplitudeBracket first = find_bracket(shooter, 2.0 * a_floor, a_floor, config.amplitude_max, config);
  auto brackets = scan_brackets(shooter, a_floor, 2.0 * first.crossed, 48, config);
  if (brackets.empty()) brackets.push_back(first);

  ELPoint best;
  double best_integral = std::numeric_limits<double>::infinity();
  for (const auto& br : brackets) {
    ShootingSolution sol = solve_compact(shooter, br, p, config);
    const double integral = weighted_integral(sol.profile, p);
    if (integral < best_integral) {
      best_integral = integral;
      best.amplitude = sol.amplitude;
      best.profile = std::move(sol.profile);
      best.truncation_radius = sol.truncation_radius;
      best.window = sol.window;
    }
  }
  best.parameter = nu;
  best.candidates = static_cast<int>(brackets.size());
  best.support_radius = best.profile.support_radius;
  best.value = std::pow(best_integral, 1.0 - 2.0 / p);
  best.residual = ode_residual(best.profile, shooter.source);
  return best;
}

ELPoint solve_nu_for_beta(double p, double B, double beta, const SolverConfig& config) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("beta must be positive and finite");
  if (!(B > 0.0)) throw DomainError("nu_EL needs B > 0");
  // beta(nu) increases with nu; work in s = log(nu - B) and start from the
  // Gaussian value, which sits just above nu_EL.
  ELPoint last;
  auto f = [&](double s) {
    last = solve_nu_el(p, B, B + std::exp(s), config);
    return std::log(last.value) - std::log(beta);
  };
  const double guess = std::log(std::max(nu_gauss(p, B, beta).quotient_value - B, 1e-12 * B));
  double hi = guess + 0.05;
  double f_hi = f(hi);
  for (int k = 0; f_hi < 0.0; ++k) {
    if (k == 60) throw SolverError("no upper bracket for nu at the requested beta");
    hi += 0.5;
    f_hi = f(hi);
  }
  double lo = hi - 0.25;
  double f_lo = f(lo);
  for (int k = 0; f_lo > 0.0; ++k) {
    if (k == 60) throw SolverError("no lower bracket for nu at the requested beta");
    hi = lo;
    f_hi = f_lo;
    lo -= 0.5 * (k + 1);
    f_lo = f(lo);
  }
  if (f_lo == 0.0) return solve_nu_el(p, B, B + std::exp(lo), config);
  if (f_hi == 0.0) return solve_nu_el(p, B, B + std::exp(hi), config);
  boost::uintmax_t iters = 100;
  auto [s0, s1] =
      boost::math::tools::toms748_solve(f, lo, hi, f_lo, f_hi, boost::math::tools::eps_tolerance<double>(44), iters);
  return solve_nu_el(p, B, B + std::exp(0.5 * (s0 + s1)), config);
}

BoundCurve build_curve(const ELSolver& solver, std::span<const double> grid, const std::string& parameter_name,
                       const std::string& provenance, const SolverConfig& config) {
  std::vector<double> x(grid.begin(), grid.end());
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (!(x[i] > x[i - 1])) throw InputError("curve grid must increase strictly");
  }
  if (x.size() < 2) throw InputError("curve grid needs at least two nodes");
  std::vector<double> y(x.size());
  detail::parallel_for(x.size(), config.threads, [&](std::size_t i) { y[i] = solver(x[i]).value; });

  BoundCurve curve(parameter_name, x, y, BoundKind::sharp_numeric, provenance);
  const std::size_t bad = curve.first_violation();
  if (bad == curve.size()) return curve;

  // One refinement pass around the first violation.
  std::vector<double> xr, yr;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i > 0 && (i == bad || i == bad + 1)) {
      const double xm = 0.5 * (x[i - 1] + x[i]);
      xr.push_back(xm);
      yr.push_back(solver(xm).value);
    }
    xr.push_back(x[i]);
    yr.push_back(y[i]);
  }
  BoundCurve refined(parameter_name, xr, yr, BoundKind::sharp_numeric, provenance);
  const std::size_t still = refined.first_violation();
  if (still != refined.size()) {
    throw CurveError("sampled " + provenance + " curve decreases near " + parameter_name + " = " +
                     std::to_string(refined.parameters()[still]));
  }
  return refined;
}

}  // namespace magineq
