#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <vector>

namespace magineq {

/// A radial function sampled on a nonuniform grid together with its
/// derivative, as produced by the shooting solvers.
///
/// Between nodes the profile is the cubic Hermite interpolant of
/// (values, derivative_values). Beyond the last node it is either zero
/// (finite `support_radius`) or an exponential continuation fitted to the
/// last node's logarithmic derivative.
struct RadialProfile {
  std::vector<double> nodes;
  std::vector<double> values;
  std::vector<double> derivative_values;
  double initial_amplitude = 0.0;
  double support_radius = std::numeric_limits<double>::infinity();
  int d = 2;

  [[nodiscard]] bool empty() const { return nodes.empty(); }
  [[nodiscard]] bool compact() const { return std::isfinite(support_radius); }
  [[nodiscard]] double last_radius() const { return nodes.back(); }

  /// Throws InputError unless the grid is nonempty, strictly increasing,
  /// consistently sized and finite.
  void validate() const;

  /// v(r) via Hermite interpolation; v(r) = a for r below the first node.
  [[nodiscard]] double value(double r) const;
  [[nodiscard]] double derivative(double r) const;
};

/// Surface area of the unit sphere S^{d-1}: 2 pi (d=2), 4 pi (d=3).
double sphere_area(int d);

/// |S^{d-1}| * int_0^inf |v|^exponent r^{d-1} dr.
///
/// Gauss-Legendre on every Hermite cell, the disk [0, r_first] treated as
/// constant, and for infinite support an exponential tail beyond the last
/// node when the profile is still decaying there.
double weighted_integral(const RadialProfile& profile, double exponent);

/// |S^{d-1}| * int_0^inf |v'|^2 r^{d-1} dr.
double gradient_norm_squared(const RadialProfile& profile);

/// Generic radial quadrature on the profile's Hermite cells:
/// |S^{d-1}| * int f(r, v, v') r^{d-1} dr over the stored grid only.
template <class F>
double integrate_on_profile(const RadialProfile& profile, F&& f);

/// Fornberg finite-difference weights for the first derivative at x0 using
/// the stencil points xs.
std::vector<double> fd_first_derivative_weights(double x0, std::span<const double> xs);

}  // namespace magineq

#include "magineq/detail/radial_profile_impl.hpp"
