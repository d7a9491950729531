#pragma once

#include <string>

#include "magineq/config.hpp"
#include "magineq/radial_profile.hpp"
#include "magineq/shooting.hpp"

namespace magineq {

/// Zero-field optimal Gagliardo-Nirenberg constants and how they were found.
struct GNConstants {
  int d = 2;
  double p = 3.0;
  double C_p = 1.0;
  double S_p = 1.0;
  /// Max-norm ODE residual of the ground state on its grid.
  double solver_residual = 0.0;
  /// Free-form discretization summary (node count, truncation, window).
  std::string grid_spec;
  double amplitude = 0.0;
  double truncation_radius = 0.0;
  /// Finite for p < 2.
  double support_radius = 0.0;
  /// Number of compact-support candidates found by the amplitude scan.
  int candidates = 0;
};

/// Right-hand side G(r, u) of u'' + (d-1)u'/r = G for the zero-field
/// ground state: u - u^{p-1} when p > 2, u^{p-1} - u when p < 2.
double zero_field_source(double p, double u);

/// Full shooting record for the zero-field ground state.
ShootingSolution ground_state_solution(int d, double p, const SolverConfig& config = {});

/// Positive decaying solution of -u'' - (d-1)u'/r + u = u^{p-1}, 2 < p < 2*.
RadialProfile solve_ground_state_supercritical(int d, double p, const SolverConfig& config = {});

/// Compactly supported solution of -u'' - (d-1)u'/r + u^{p-1} = u, 1 < p < 2.
/// When several touchdown amplitudes exist the one with the smallest
/// L^p integral is returned.
RadialProfile solve_ground_state_subcritical(int d, double p, const SolverConfig& config = {});

/// C_p from the ground state; C_2 = 1.
GNConstants compute_C_p(int d, double p, const SolverConfig& config = {});

/// Scale-invariant constant S_p from C_p.
double compute_S_p(int d, double p, double C_p);

/// Euclidean log-Sobolev constant (d/2) gamma log(pi e^2 / gamma).
double xi_zero_field(int d, double gamma);

/// Two-term expansion 1 - (d/4) eps log eps + (d/4) eps log(K) of C_{2+eps}.
/// The limit of C_p is governed by K = 2 pi e^2, see `cp_expansion_constant`.
double cp_expansion(int d, double eps, double argument);

/// 2 pi e^2.
double cp_expansion_constant();

}  // namespace magineq
