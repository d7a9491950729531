#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "magineq/bound_curve.hpp"
#include "magineq/config.hpp"
#include "magineq/gn_ground_states.hpp"
#include "magineq/interp.hpp"

namespace magineq {

enum class TailModel { none, constant, power };

/// Radial potential phi(r) sampled on strictly increasing radii.
///
/// Between nodes phi is the monotone cubic interpolant. Beyond the last
/// node R, with L the tail level (0 unless the grid was shifted or scaled):
/// tail none means phi = L, constant means phi = phi(R), and power means
/// phi(r) = L + (phi(R) - L) (r/R)^tail_exponent.
class PotentialGrid {
 public:
  PotentialGrid(std::vector<double> nodes, std::vector<double> values, int d, TailModel tail = TailModel::none,
                double tail_exponent = 0.0, double tail_level = 0.0);

  /// Reads '# d=<2|3> tail=<none|constant|power:k>' followed by 'r,phi'
  /// rows (an optional 'r,phi' header line is accepted). Blank lines and
  /// further '#' lines are skipped. ParseError carries the line number.
  static PotentialGrid parse(std::istream& in);
  static PotentialGrid load(const std::string& path);

  [[nodiscard]] double value(double r) const;
  [[nodiscard]] const std::vector<double>& nodes() const { return interp_.x(); }
  [[nodiscard]] const std::vector<double>& values() const { return interp_.y(); }
  [[nodiscard]] int d() const { return d_; }
  [[nodiscard]] TailModel tail() const { return tail_; }
  [[nodiscard]] double tail_exponent() const { return tail_exponent_; }
  [[nodiscard]] double tail_level() const { return tail_level_; }
  [[nodiscard]] double last_radius() const { return nodes().back(); }
  [[nodiscard]] double min_value() const;

  /// phi + s and t phi.
  [[nodiscard]] PotentialGrid shifted(double s) const;
  [[nodiscard]] PotentialGrid scaled(double t) const;

  /// |S^{d-1}| int_0^R f(phi(r)) r^{d-1} dr over the sampled range, where f
  /// vanishes wherever phi > threshold (when `below` is set) and the split
  /// at phi = threshold is resolved exactly.
  template <class F>
  double integrate_grid(F&& f, double threshold, bool below) const;

 private:
  MonotoneCubic interp_;
  int d_ = 2;
  TailModel tail_ = TailModel::none;
  double tail_exponent_ = 0.0;
  double tail_level_ = 0.0;
};

/// (int |min(phi, 0)|^q dx)^{1/q}.
double lq_norm_negative_part(const PotentialGrid& potential, double q);
/// (int_{lambda > phi} (lambda - phi)^q dx)^{1/q}.
double lq_plus_norm(const PotentialGrid& potential, double q, double lambda);
/// || phi^{-1} ||_q for phi > 0.
double lq_norm_inverse(const PotentialGrid& potential, double q);
/// int exp(-phi/gamma) dx.
double gibbs_integral(const PotentialGrid& potential, double gamma);

enum class BoundSource { closed_form_interp, closed_form_LT, el_curve };

std::string_view to_string(BoundSource s);
BoundSource bound_source_from_string(std::string_view s);

struct KLTBound {
  /// i, ii, iii, i-threshold, ii-threshold.
  std::string case_name;
  double input_norm = 0.0;
  double bound_value = 0.0;
  BoundSource bound_source = BoundSource::closed_form_interp;
  /// Set when an EL curve was extended beyond its sampled range by the
  /// asymptotic power law (large side) or the linear gap limit (small side).
  bool asymptotic_extended = false;
  double threshold_lambda = 0.0;
};

/// lambda >= -alpha_B(norm_V) with q = p/(p-2) > d/2. In el_curve mode
/// `curve` is the sampled alpha -> mu_EL(alpha) map.
KLTBound klt_case_i(const ProblemParams& params, const GNConstants& gn, double norm_V, BoundSource source,
                    const BoundCurve* curve = nullptr);

/// lambda >= nu_B(beta) with beta = ||W^{-1}||_q^{-1}, q = p/(2-p). In
/// el_curve mode `curve` is the sampled nu -> beta map.
KLTBound klt_case_ii(const ProblemParams& params, const GNConstants& gn, double beta, BoundSource source,
                     const BoundCurve* curve = nullptr);

/// lambda >= xi(gamma) - gamma log(gibbs): the sharp constant-field xi_B in
/// two dimensions, the Euclidean xi_0 otherwise.
KLTBound klt_case_iii(const ProblemParams& params, double gamma, double gibbs);

enum class ThresholdCase { i, ii };

/// Same bounds with the potential measured against the level lambda.
KLTBound klt_threshold_case(const ProblemParams& params, const GNConstants& gn, const PotentialGrid& potential,
                            double q, double lambda, ThresholdCase which, BoundSource source,
                            const BoundCurve* curve = nullptr);

/// alpha_B(mu) from the selected source; the inverse of mu_B.
double alpha_of_mu(const ProblemParams& params, const GNConstants& gn, double mu, BoundSource source,
                   const BoundCurve* curve, bool* extended = nullptr);
/// nu_B(beta) from the selected source.
double nu_of_beta(const ProblemParams& params, const GNConstants& gn, double beta, BoundSource source,
                  const BoundCurve* curve, bool* extended = nullptr);

}  // namespace magineq

#include "magineq/detail/klt_impl.hpp"
