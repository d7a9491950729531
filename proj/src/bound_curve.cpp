#include "magineq/bound_curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/tools/roots.hpp>

#include "magineq/errors.hpp"

namespace magineq {

std::string_view to_string(BoundKind k) {
  switch (k) {
    case BoundKind::lower:
      return "lower";
    case BoundKind::upper:
      return "upper";
    case BoundKind::sharp_numeric:
      return "sharp-numeric";
  }
  return "unknown";
}

BoundCurve::BoundCurve(std::string parameter_name, std::vector<double> parameters, std::vector<double> values,
                       BoundKind kind, std::string provenance)
    : name_(std::move(parameter_name)), kind_(kind), provenance_(std::move(provenance)) {
  for (double v : values) {
    if (!std::isfinite(v)) throw InputError("bound curve holds a non-finite value");
  }
  interp_ = MonotoneCubic(std::move(parameters), std::move(values));
}

std::size_t BoundCurve::first_violation() const {
  const auto& y = values();
  for (std::size_t i = 1; i < y.size(); ++i) {
    if (!(y[i] > y[i - 1])) return i;
  }
  return y.size();
}

bool BoundCurve::increasing() const { return first_violation() == size(); }

double BoundCurve::max_second_difference() const {
  const auto& x = parameters();
  const auto& y = values();
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < x.size(); ++i) {
    const double left = (y[i] - y[i - 1]) / (x[i] - x[i - 1]);
    const double right = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
    worst = std::max(worst, right - left);
  }
  return worst;
}

double BoundCurve::evaluate(double parameter) const {
  if (interp_.empty()) throw InputError("empty bound curve");
  if (parameter < parameters().front() || parameter > parameters().back()) {
    throw RangeError(name_ + " outside the sampled range");
  }
  return interp_(parameter);
}

double BoundCurve::invert(double target) const {
  if (interp_.empty()) throw InputError("empty bound curve");
  const std::size_t bad = first_violation();
  if (bad != size()) {
    throw CurveError("bound curve is not increasing at sample " + std::to_string(bad) + " (" + name_ + " = " +
                     std::to_string(parameters()[bad]) + ")");
  }
  const auto& x = parameters();
  const auto& y = values();
  if (target < y.front() || target > y.back()) throw RangeError("value outside the sampled curve range");
  auto it = std::upper_bound(y.begin(), y.end(), target);
  const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(it - y.begin()) - 1, y.size() - 2);
  if (target == y[i]) return x[i];
  if (target == y[i + 1]) return x[i + 1];
  auto f = [&](double t) { return interp_(t) - target; };
  boost::uintmax_t iters = 200;
  auto [lo, hi] = boost::math::tools::bisect(f, x[i], x[i + 1], boost::math::tools::eps_tolerance<double>(52), iters);
  return 0.5 * (lo + hi);
}

}  // namespace magineq
