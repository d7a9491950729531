#pragma once

#include <optional>
#include <string>
#include <vector>

#include "magineq/config.hpp"
#include "magineq/klt.hpp"
#include "magineq/table.hpp"

namespace magineq {

enum class Spacing { linear, log };

Spacing spacing_from_string(std::string_view s);
std::string_view to_string(Spacing s);

struct Range {
  double min = 0.0;
  double max = 1.0;
  int steps = 2;
  Spacing spacing = Spacing::linear;
};

/// steps nodes from min to max. Log spacing is geometric in x + offset, so
/// an alpha range can be spread geometrically over its distance to -Lambda.
std::vector<double> make_grid(const Range& range, double offset = 0.0);

enum class Subcommand { gn, mu_curve, nu_curve, xi_curve, stability_curve, klt };

Subcommand subcommand_from_string(std::string_view s);
std::string_view to_string(Subcommand s);

struct KLTRequest {
  std::string potential_path;
  /// i, ii, iii, i-threshold or ii-threshold.
  std::string case_name = "i";
  /// Norm exponent; empty selects p/(p-2) for case i and p/(2-p) for case ii.
  std::optional<double> q;
  double lambda = 0.0;
  /// Threshold sweep; the report then ends with a max-over-lambda row.
  std::optional<Range> lambda_range;
  BoundSource source = BoundSource::closed_form_interp;
  double gamma = 1.0;
};

struct SweepSpec {
  Subcommand subcommand = Subcommand::mu_curve;
  ProblemParams params = ProblemParams::constant_field(2, 3.0, 1.0);
  /// alpha, beta or gamma grid depending on the subcommand.
  Range range;
  SolverConfig config;
  /// Adds the figure-axis scaled columns.
  bool figure_axes = false;
  KLTRequest klt;

  /// Domain checks that must pass before any solve.
  void validate() const;
};

struct SweepResult {
  Table table;
  /// Every node succeeded and every ordering check held.
  bool ok = true;
};

SweepResult run_gn(const SweepSpec& spec);
/// alpha, mu_interp, mu_LT, mu_EL, mu_Gauss plus log-ratio and ordering columns.
SweepResult run_mu_curve(const SweepSpec& spec);
/// beta, nu_interp, nu_LT, nu_EL, nu_Gauss; nu_EL from inverting beta(nu).
SweepResult run_nu_curve(const SweepSpec& spec);
/// gamma, xi_B, xi_0 and the local concavity of xi_B.
SweepResult run_xi_curve(const SweepSpec& spec);
/// alpha, mu_EL, mu_eig and the method cross-check per node.
SweepResult run_stability_curve(const SweepSpec& spec);
SweepResult run_klt(const SweepSpec& spec);

SweepResult run_sweep(const SweepSpec& spec);

}  // namespace magineq
