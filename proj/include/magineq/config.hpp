#pragma once

#include <limits>
#include <string>
#include <string_view>

namespace magineq {

/// Shared parameter record: dimension, exponent, field strength and gap.
///
/// For constant fields the spectral gap equals the field strength, which is
/// what `constant_field` builds.
struct ProblemParams {
  int d = 2;
  double p = 3.0;
  double B = 0.0;
  double Lambda = 0.0;

  static ProblemParams constant_field(int d, double p, double B) { return {d, p, B, B}; }

  /// Critical Sobolev exponent 2*; +inf in two dimensions.
  [[nodiscard]] double critical_exponent() const {
    return d == 2 ? std::numeric_limits<double>::infinity() : 2.0 * d / (d - 2.0);
  }

  /// Checks d in {2,3}, 1 < p < 2*, B >= 0 and Lambda > 0 whenever B > 0.
  /// `allow_p2` admits the limiting exponent p = 2.
  void validate(bool allow_p2 = false) const;
};

/// Numerical knobs for every shooting / quadrature routine.
///
/// Defaults reproduce the tolerances the curves in this toolkit were
/// calibrated with; they serialize to the JSON config format the CLI reads.
struct SolverConfig {
  double ode_rel_tol = 1e-13;
  /// Absolute ODE tolerance, relative to the shooting amplitude a = v(0).
  double ode_abs_tol = 1e-16;
  /// Largest step the integrator may take (keeps stored grids dense).
  double max_step = 0.02;
  /// Regularized starting radius.
  double r0 = 1e-6;
  /// Outer radius for zero-field decaying states; <= 0 selects the default
  /// rule for magnetic states.
  double r_max = 40.0;
  /// Relative width of the final amplitude bracket.
  double bracket_tol = 1e-12;
  double quad_tol = 1e-10;
  /// A decaying profile counts as converged once v < decay_cutoff * a.
  double decay_cutoff = 1e-14;
  /// Tangential touchdown: |v|, |v'| both below touchdown_tol * a.
  double touchdown_tol = 1e-10;
  /// Accepted relative spread of beta between the final bracket endpoints.
  double beta_change_tol = 1e-8;
  double amplitude_min = 1e-8;
  double amplitude_max = 1e12;
  /// Method-agreement tolerance for the stability eigenvalue.
  double eig_tol = 1e-6;
  /// Mesh width of the coarsest finite-difference level (stability).
  double fd_step = 0.01;
  int threads = 0;

  [[nodiscard]] std::string to_json() const;
  static SolverConfig from_json(std::string_view text);
  /// Overlays fields present in `text` on top of `base`.
  static SolverConfig merge_json(const SolverConfig& base, std::string_view text);
};

}  // namespace magineq
