#include "magineq/radial_profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "magineq/errors.hpp"

namespace magineq {

void RadialProfile::validate() const {
  if (nodes.empty()) throw InputError("radial profile has an empty grid");
  if (values.size() != nodes.size() || derivative_values.size() != nodes.size()) {
    throw InputError("radial profile arrays differ in length");
  }
  if (nodes.front() < 0.0) throw InputError("radial profile starts at a negative radius");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i > 0 && !(nodes[i] > nodes[i - 1])) {
      throw InputError("radial profile nodes are not strictly increasing");
    }
    if (!std::isfinite(values[i]) || !std::isfinite(derivative_values[i])) {
      throw IntegrationError("radial profile holds non-finite values");
    }
  }
}

namespace {

std::size_t locate(const std::vector<double>& nodes, double r) {
  auto it = std::upper_bound(nodes.begin(), nodes.end(), r);
  return static_cast<std::size_t>(std::distance(nodes.begin(), it)) - 1;
}

// Decay rate kappa with v ~ v_end exp(-kappa (r - r_end)); zero when the
// profile is not decaying at its end.
double tail_rate(const RadialProfile& p) {
  const double v = p.values.back();
  const double dv = p.derivative_values.back();
  if (v == 0.0 || !(dv * v < 0.0)) return 0.0;
  return -dv / v;
}

}  // namespace

double RadialProfile::value(double r) const {
  if (r <= nodes.front()) return initial_amplitude != 0.0 ? initial_amplitude : values.front();
  if (r >= nodes.back()) {
    if (compact() || r == nodes.back()) return r == nodes.back() ? values.back() : 0.0;
    const double k = tail_rate(*this);
    return k > 0.0 ? values.back() * std::exp(-k * (r - nodes.back())) : 0.0;
  }
  return detail::cell(*this, locate(nodes, r)).value(r);
}

double RadialProfile::derivative(double r) const {
  if (r <= nodes.front()) return derivative_values.front() * (r / nodes.front());
  if (r >= nodes.back()) {
    if (compact() || r == nodes.back()) return r == nodes.back() ? derivative_values.back() : 0.0;
    const double k = tail_rate(*this);
    return k > 0.0 ? -k * values.back() * std::exp(-k * (r - nodes.back())) : 0.0;
  }
  return detail::cell(*this, locate(nodes, r)).derivative(r);
}

double sphere_area(int d) {
  switch (d) {
    case 1:
      return 2.0;
    case 2:
      return 2.0 * std::numbers::pi;
    case 3:
      return 4.0 * std::numbers::pi;
    default:
      return 2.0 * std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0);
  }
}

double weighted_integral(const RadialProfile& profile, double exponent) {
  profile.validate();
  if (!(exponent > 0.0)) throw InputError("weighted_integral needs a positive exponent");

  double total = integrate_on_profile(
      profile, [exponent](double, double v, double) { return std::pow(std::abs(v), exponent); });

  // Disk below the first node, where v is flat to second order.
  const double r_first = profile.nodes.front();
  const double a = profile.initial_amplitude != 0.0 ? profile.initial_amplitude : profile.values.front();
  total += sphere_area(profile.d) * std::pow(std::abs(a), exponent) * std::pow(r_first, profile.d) / profile.d;

  if (!profile.compact()) {
    const double k = tail_rate(profile);
    if (k > 0.0) {
      // int_R^inf e^{-s (r-R)} r^{d-1} dr with s = exponent * k, exact for d = 2, 3.
      const double s = exponent * k;
      const double R = profile.nodes.back();
      double moment = 0.0;
      if (profile.d == 2) moment = R / s + 1.0 / (s * s);
      else moment = R * R / s + 2.0 * R / (s * s) + 2.0 / (s * s * s);
      total += sphere_area(profile.d) * std::pow(std::abs(profile.values.back()), exponent) * moment;
    }
  }
  if (!std::isfinite(total)) throw IntegrationError("weighted_integral produced a non-finite value");
  return total;
}

double gradient_norm_squared(const RadialProfile& profile) {
  profile.validate();
  double total = integrate_on_profile(profile, [](double, double, double dv) { return dv * dv; });
  if (!profile.compact()) {
    const double k = tail_rate(profile);
    if (k > 0.0) {
      const double s = 2.0 * k;
      const double R = profile.nodes.back();
      const double moment = profile.d == 2 ? R / s + 1.0 / (s * s) : R * R / s + 2.0 * R / (s * s) + 2.0 / (s * s * s);
      total += sphere_area(profile.d) * k * k * profile.values.back() * profile.values.back() * moment;
    }
  }
  return total;
}

std::vector<double> fd_first_derivative_weights(double x0, std::span<const double> xs) {
  // Fornberg's recursion, derivative orders 0 and 1.
  const std::size_t n = xs.size();
  std::vector<double> c0(n, 0.0), c1(n, 0.0);
  double c_prev = 1.0;
  double dx0 = xs[0] - x0;
  c0[0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    double c2 = 1.0;
    const double dxi = xs[i] - x0;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = xs[i] - xs[j];
      c2 *= c3;
      if (j == i - 1) {
        c1[i] = c_prev * (c0[i - 1] - dx0 * c1[i - 1]) / c2;
        c0[i] = -c_prev * dx0 * c0[i - 1] / c2;
      }
      c1[j] = (dxi * c1[j] - c0[j]) / c3;
      c0[j] = dxi * c0[j] / c3;
    }
    c_prev = c2;
    dx0 = dxi;
  }
  return c1;
}

}  // namespace magineq
