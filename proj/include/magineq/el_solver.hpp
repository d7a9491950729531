#pragma once

#include <functional>
#include <limits>
#include <span>
#include <string>

#include "magineq/bound_curve.hpp"
#include "magineq/config.hpp"
#include "magineq/radial_profile.hpp"
#include "magineq/shooting.hpp"

namespace magineq {

/// One converged solution of the two-dimensional constant-field
/// Euler-Lagrange equation.
struct ELPoint {
  /// alpha (p > 2) or nu (p < 2).
  double parameter = 0.0;
  /// mu_EL(alpha) or beta(nu).
  double value = 0.0;
  double amplitude = 0.0;
  RadialProfile profile;
  double support_radius = std::numeric_limits<double>::infinity();
  /// Where the stored decaying profile ends (p > 2).
  double truncation_radius = 0.0;
  /// Outer radius of the integration window actually used.
  double window = 0.0;
  double residual = 0.0;
  /// Touchdown branches found by the amplitude scan (p < 2).
  int candidates = 0;
};

/// G(r, v) of v'' + v'/r = G for p > 2: (B^2 r^2/4 + alpha) v - |v|^{p-2} v.
double supercritical_source(double p, double B, double alpha, double r, double v);
/// G(r, v) for p < 2: (B^2 r^2/4 - nu) v + |v|^{p-2} v.
double subcritical_source(double p, double B, double nu, double r, double v);

/// Default window for the magnetic problem: B^2 r^2 / 4 >= 50 (|alpha| + 1),
/// never below config.r_max.
double magnetic_window(double B, double alpha, const SolverConfig& config);

ShootOutcome shoot_supercritical(double p, double B, double alpha, double a, const SolverConfig& config = {});
ShootOutcome shoot_subcritical(double p, double B, double nu, double a, const SolverConfig& config = {});

/// mu_EL(alpha) = (2 pi int v^p r dr)^{1 - 2/p} on the decaying solution.
ELPoint solve_mu_el(double p, double B, double alpha, const SolverConfig& config = {});

/// beta(nu) = (2 pi int_0^R v^p r dr)^{1 - 2/p} on the compactly supported
/// solution with the smallest L^p integral, nu > B.
ELPoint solve_nu_el(double p, double B, double nu, const SolverConfig& config = {});

/// Inverse of solve_nu_el: the solution whose beta(nu) equals `beta`
/// (root-finding in log(nu - B) started at the Gaussian value).
ELPoint solve_nu_for_beta(double p, double B, double beta, const SolverConfig& config = {});

using ELSolver = std::function<ELPoint(double)>;

/// Samples `solver` on a strictly increasing grid (nodes may run in
/// parallel). Where samples fail to increase, midpoints are inserted once
/// around the violation; a persisting violation raises CurveError.
BoundCurve build_curve(const ELSolver& solver, std::span<const double> grid, const std::string& parameter_name,
                       const std::string& provenance, const SolverConfig& config = {});

}  // namespace magineq
