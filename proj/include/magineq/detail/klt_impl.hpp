#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "magineq/radial_profile.hpp"

namespace magineq {

namespace detail {

// Gauss-Kronrod on [a, b], halving until the local error estimate drops
// below abs_tol or to the noise floor of the estimate. A relative
// per-cell tolerance alone would subdivide cells whose contribution is
// negligible down to the depth limit.
template <class G>
double gk_absolute(const G& g, double a, double b, double abs_tol, int depth) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  double err = 0.0, l1 = 0.0;
  const double v = GK::integrate(g, a, b, 0, 0.0, &err, &l1);
  // The Kronrod error estimate bottoms out near 1e-12 of the L1 norm.
  if (err <= std::max(abs_tol, 1e-11 * l1) || depth == 0) return v;
  const double m = 0.5 * (a + b);
  return gk_absolute(g, a, m, 0.5 * abs_tol, depth - 1) + gk_absolute(g, m, b, 0.5 * abs_tol, depth - 1);
}

}  // namespace detail

template <class F>
double PotentialGrid::integrate_grid(F&& f, double threshold, bool below) const {
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  const auto& x = nodes();
  std::vector<std::pair<double, double>> cells;
  cells.reserve(x.size());
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    double a = x[i];
    double b = x[i + 1];
    if (below) {
      const double fa = interp_(a) - threshold;
      const double fb = interp_(b) - threshold;
      if (fa >= 0.0 && fb >= 0.0) continue;
      if ((fa < 0.0) != (fb < 0.0)) {
        auto g = [&](double r) { return interp_(r) - threshold; };
        boost::uintmax_t iters = 200;
        auto [lo, hi] = boost::math::tools::toms748_solve(g, a, b, fa, fb,
                                                          boost::math::tools::eps_tolerance<double>(52), iters);
        const double root = 0.5 * (lo + hi);
        if (fa < 0.0) b = root;
        else a = root;
      }
    }
    if (b > a) cells.emplace_back(a, b);
  }
  auto integrand = [&](double r) { return f(interp_(r)) * detail::radial_weight(d_, r); };
  double rough = 0.0;
  for (const auto& [a, b] : cells) rough += std::abs(GK::integrate(integrand, a, b, 0, 0.0));
  if (rough == 0.0) return 0.0;
  const double budget = 1e-13 * rough / (cells.back().second - cells.front().first);
  double total = 0.0;
  for (const auto& [a, b] : cells) total += detail::gk_absolute(integrand, a, b, budget * (b - a), 12);
  return sphere_area(d_) * total;
}

}  // namespace magineq
