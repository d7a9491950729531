#include "magineq/gn_ground_states.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "magineq/errors.hpp"

namespace magineq {

double zero_field_source(double p, double u) {
  return p > 2.0 ? u - signed_power(u, p) : signed_power(u, p) - u;
}

namespace {

RadialShooter zero_field_shooter(int d, double p, const SolverConfig& config) {
  RadialShooter s;
  s.d = d;
  s.source = [p](double, double u) { return zero_field_source(p, u); };
  s.r_max = config.r_max > 0.0 ? config.r_max : 40.0;
  s.compact_support = p < 2.0;
  return s;
}

void check_exponent(int d, double p) {
  ProblemParams{d, p, 0.0, 0.0}.validate();
}

}  // namespace

ShootingSolution ground_state_solution(int d, double p, const SolverConfig& config) {
  check_exponent(d, p);
  const RadialShooter shooter = zero_field_shooter(d, p, config);
  if (p > 2.0) return solve_decaying(shooter, 2.0, 1.0, config);

  // Amplitudes a <= 1 rebound at once; scan upward from just above 1 and
  // keep the touchdown branch with the smallest L^p integral.
  const double a_floor = 1.0 + 1e-9;
  const AmplitudeBracket first = find_bracket(shooter, 2.0, a_floor, config.amplitude_max, config);
  auto brackets = scan_brackets(shooter, a_floor, 2.0 * first.crossed, 48, config);
  if (brackets.empty()) brackets.push_back(first);

  ShootingSolution best;
  double best_integral = std::numeric_limits<double>::infinity();
  for (const auto& br : brackets) {
    ShootingSolution sol = solve_compact(shooter, br, p, config);
    const double integral = weighted_integral(sol.profile, p);
    if (integral < best_integral) {
      best_integral = integral;
      best = std::move(sol);
    }
  }
  best.iterations = static_cast<int>(brackets.size());
  return best;
}

RadialProfile solve_ground_state_supercritical(int d, double p, const SolverConfig& config) {
  if (!(p > 2.0)) throw DomainError("supercritical ground state needs p > 2");
  return ground_state_solution(d, p, config).profile;
}

RadialProfile solve_ground_state_subcritical(int d, double p, const SolverConfig& config) {
  if (!(p > 1.0 && p < 2.0)) throw DomainError("subcritical ground state needs 1 < p < 2");
  return ground_state_solution(d, p, config).profile;
}

GNConstants compute_C_p(int d, double p, const SolverConfig& config) {
  GNConstants out;
  out.d = d;
  out.p = p;
  if (p == 2.0) {
    ProblemParams{d, p, 0.0, 0.0}.validate(true);
    out.grid_spec = "closed form";
    return out;
  }
  const ShootingSolution sol = ground_state_solution(d, p, config);
  const double integral = weighted_integral(sol.profile, p);
  if (p > 2.0) {
    out.C_p = std::pow(integral, 1.0 - 2.0 / p);
  } else {
    out.C_p = std::pow(integral, 2.0 * (2.0 - p) / (2.0 * p + d * (2.0 - p)));
    out.support_radius = sol.profile.support_radius;
    out.candidates = sol.iterations;
  }
  out.S_p = compute_S_p(d, p, out.C_p);
  out.solver_residual = ode_residual(sol.profile, [p](double, double u) { return zero_field_source(p, u); });
  out.amplitude = sol.amplitude;
  out.truncation_radius = sol.truncation_radius;
  std::ostringstream spec;
  spec << "nodes=" << sol.profile.nodes.size() << " truncation=" << sol.truncation_radius
       << " window=" << sol.window << " terminal=" << to_string(sol.terminal);
  out.grid_spec = spec.str();
  return out;
}

double compute_S_p(int d, double p, double C_p) {
  ProblemParams{d, p, 0.0, 0.0}.validate(true);
  if (!(C_p > 0.0)) throw InputError("C_p must be positive");
  if (p == 2.0) return C_p;
  auto xlogx = [](double x) { return x > 0.0 ? x * std::log(x) : 0.0; };
  if (p > 2.0) {
    const double a = d * (p - 2.0) / (2.0 * p);
    return std::exp(xlogx(a) + xlogx(1.0 - a)) * C_p;
  }
  const double n = 2.0 * p + d * (2.0 - p);
  const double a = d * (2.0 - p) / n;
  const double b = 2.0 * p / n;
  return std::exp(xlogx(a) + xlogx(b)) * C_p;
}

double xi_zero_field(int d, double gamma) {
  if (!(gamma > 0.0)) throw InputError("gamma must be positive");
  constexpr double pi = std::numbers::pi;
  return 0.5 * d * gamma * (std::log(pi) + 2.0 - std::log(gamma));
}

double cp_expansion(int d, double eps, double argument) {
  return 1.0 - 0.25 * d * eps * std::log(eps) + 0.25 * d * eps * std::log(argument);
}

double cp_expansion_constant() { return 2.0 * std::numbers::pi * std::exp(2.0); }

}  // namespace magineq
