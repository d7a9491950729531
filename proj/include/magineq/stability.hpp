#pragma once

#include <string>
#include <string_view>

#include "magineq/config.hpp"
#include "magineq/radial_profile.hpp"

namespace magineq {

enum class EigenMethod { finite_difference, shooting };

std::string_view to_string(EigenMethod m);

/// Angular-momentum-one perturbation operator
///   -v'' - v'/r + ((1/r - B r/2)^2 + alpha) v - coupling (p/2) |psi0|^{p-2} v
/// on L^2((0, inf), r dr). A null psi0 (or coupling 0) gives the linear
/// Landau-sector operator.
struct SectorProblem {
  const RadialProfile* psi0 = nullptr;
  double p = 3.0;
  double B = 1.0;
  double alpha = 0.0;
  double coupling = 1.0;
  /// Dirichlet radius; <= 0 selects 2 sqrt(50 + 2B + 2|alpha|)/B.
  double r_max = 0.0;
};

/// Potential of the regularized problem for w = v/r:
/// -w'' - 3w'/r + U(r) w = mu w with U = B^2 r^2/4 - B + alpha - coupling (p/2)|psi0|^{p-2}.
double sector_potential(const SectorProblem& problem, double r);
double sector_window(const SectorProblem& problem);

struct EigenEstimate {
  double value = 0.0;
  double r_max = 0.0;
  std::string discretization;
  /// v = r w, positive, unit norm in L^2(r dr); filled by the
  /// finite-difference method only.
  RadialProfile eigenfunction;
};

/// Eigenvalue number `index` (0 = lowest) of the Dirichlet problem.
///
/// finite_difference: vertex-centred finite volumes with exact r^3 cell
/// masses on meshes fd_step, fd_step/2, fd_step/4 and two Richardson steps;
/// Sturm-count bisection on the symmetric tridiagonal matrix.
/// shooting: w(r0) = 1 launch and bisection on the zero count.
EigenEstimate sector_eigenvalue(const SectorProblem& problem, int index, EigenMethod method,
                                const SolverConfig& config = {});

struct StabilityResult {
  double alpha = 0.0;
  double mu_eig = 0.0;
  double mu_fd = 0.0;
  double mu_shooting = 0.0;
  /// |mu_fd - mu_shooting| / |mu_shooting|.
  double relative_gap = 0.0;
  std::string base_profile_ref;
  std::string method;
  std::string discretization;
  double r_max = 0.0;
  /// U(r_max) - mu_eig; the truncation is trusted when this exceeds 50.
  double truncation_margin = 0.0;
  RadialProfile eigenfunction;
};

/// Lowest perturbation eigenvalue around a converged mu_EL profile psi0 for
/// the same (p, B, alpha). Throws InputError for an empty or mismatched
/// psi0 and AccuracyError when the two methods disagree beyond
/// config.eig_tol (relative).
StabilityResult lowest_c1_eigenvalue(const RadialProfile& psi0, double p, double B, double alpha,
                                     const SolverConfig& config = {});

/// int [|v'|^2 + ((1/r - B r/2)^2 + alpha) v^2 - coupling (p/2)|psi0|^{p-2} v^2] r dr
/// over the stored grid of v_test. InputError when v_test does not vanish
/// at the origin.
double quadratic_form_check(const RadialProfile& psi0, double p, double B, double alpha, const RadialProfile& v_test,
                            double coupling = 1.0);

/// int v^2 r dr over the stored grid.
double radial_norm_squared(const RadialProfile& v);

}  // namespace magineq
