#pragma once

#include <functional>
#include <string_view>
#include <vector>

#include "magineq/config.hpp"
#include "magineq/radial_profile.hpp"

namespace magineq {

enum class ShootClass { crossed, rebound, converged_decay, tangential_touchdown };

std::string_view to_string(ShootClass c);

/// Result of one radial integration from the regularized origin.
struct ShootOutcome {
  ShootClass classification = ShootClass::converged_decay;
  double event_radius = 0.0;
  /// Profile up to (and including) the event radius.
  RadialProfile profile;
};

/// Radial problem v'' + (d-1) v'/r = source(r, v), v(0) = a, v'(0) = 0.
struct RadialShooter {
  int d = 2;
  std::function<double(double, double)> source;
  /// Outer end of the integration window.
  double r_max = 40.0;
  /// Watch for simultaneous vanishing of v and v' (sublinear problems).
  bool compact_support = false;
};

/// Integrates one trajectory and classifies it.
///
/// Throws IntegrationError when the adaptive stepper fails.
ShootOutcome shoot(const RadialShooter& shooter, double amplitude, const SolverConfig& config);

/// Amplitudes with opposite classifications; rebound < crossed.
struct AmplitudeBracket {
  double rebound = 0.0;
  double crossed = 0.0;
  [[nodiscard]] double relative_width() const { return (crossed - rebound) / crossed; }
};

struct ShootingSolution {
  RadialProfile profile;
  double amplitude = 0.0;
  AmplitudeBracket bracket;
  /// Radius where the stored profile ends (decaying states: where the two
  /// bracket trajectories separate or the decay cutoff is hit).
  double truncation_radius = 0.0;
  double window = 0.0;
  ShootClass terminal = ShootClass::converged_decay;
  int iterations = 0;
};

/// Expands [lo, hi] geometrically from `start` until the classifications
/// differ. Throws SolverError if no bracket exists in [a_min, a_max].
AmplitudeBracket find_bracket(const RadialShooter& shooter, double start, double a_min, double a_max,
                              const SolverConfig& config);

/// Every rebound-to-crossed transition on a geometric grid of `samples`
/// amplitudes in [a_lo, a_hi].
std::vector<AmplitudeBracket> scan_brackets(const RadialShooter& shooter, double a_lo, double a_hi, int samples,
                                            const SolverConfig& config);

/// Positive decaying solution by bisection on the amplitude. The window
/// r_max is doubled while trajectories reach it undecided.
ShootingSolution solve_decaying(RadialShooter shooter, double start, double a_min, const SolverConfig& config);

/// Bisection inside a given bracket for the compactly supported solution.
/// Tightens past the bracket tolerance until the L^exponent integrals of
/// the two endpoint trajectories agree to config.beta_change_tol.
ShootingSolution solve_compact(const RadialShooter& shooter, AmplitudeBracket bracket, double exponent,
                               const SolverConfig& config);

/// Max over interior nodes of |v'' + (d-1)v'/r - source(r, v)| with v''
/// obtained by seven-point finite differences of the stored v'.
double ode_residual(const RadialProfile& profile, const std::function<double(double, double)>& source);

/// |v|^{e-1} sign(v), well defined at v = 0 for e > 1.
inline double signed_power(double v, double exponent) {
  if (v == 0.0) return 0.0;
  return std::copysign(std::pow(std::abs(v), exponent - 1.0), v);
}

}  // namespace magineq
