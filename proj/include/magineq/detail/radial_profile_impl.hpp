#pragma once

#include <boost/math/quadrature/gauss.hpp>

namespace magineq {

namespace detail {

struct HermiteCell {
  double x0, x1, y0, y1, m0, m1;

  [[nodiscard]] double value(double x) const {
    const double h = x1 - x0;
    const double t = (x - x0) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * h * m0 + (-2 * t3 + 3 * t2) * y1 +
           (t3 - t2) * h * m1;
  }

  [[nodiscard]] double derivative(double x) const {
    const double h = x1 - x0;
    const double t = (x - x0) / h;
    const double t2 = t * t;
    return ((6 * t2 - 6 * t) * y0 + (3 * t2 - 4 * t + 1) * h * m0 + (-6 * t2 + 6 * t) * y1 +
            (3 * t2 - 2 * t) * h * m1) /
           h;
  }
};

inline HermiteCell cell(const RadialProfile& p, std::size_t i) {
  return {p.nodes[i],  p.nodes[i + 1], p.values[i], p.values[i + 1], p.derivative_values[i],
          p.derivative_values[i + 1]};
}

inline double radial_weight(int d, double r) { return d == 2 ? r : (d == 3 ? r * r : std::pow(r, d - 1)); }

}  // namespace detail

template <class F>
double integrate_on_profile(const RadialProfile& profile, F&& f) {
  using Rule = boost::math::quadrature::gauss<double, 10>;
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < profile.nodes.size(); ++i) {
    const auto c = detail::cell(profile, i);
    sum += Rule::integrate(
        [&](double r) { return f(r, c.value(r), c.derivative(r)) * detail::radial_weight(profile.d, r); },
        c.x0, c.x1);
  }
  return sphere_area(profile.d) * sum;
}

}  // namespace magineq
