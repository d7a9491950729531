#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace magineq {

/// Shape-preserving piecewise cubic Hermite interpolant (Fritsch-Carlson
/// slopes). Works from two points upward; monotone data stay monotone on
/// every interval.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  MonotoneCubic(std::vector<double> x, std::vector<double> y);

  /// Evaluates inside [x.front(), x.back()]; the caller handles the outside.
  [[nodiscard]] double operator()(double t) const;
  [[nodiscard]] double derivative(double t) const;
  /// Index i with x[i] <= t < x[i+1] (clamped to the last interval).
  [[nodiscard]] std::size_t interval(double t) const;

  [[nodiscard]] const std::vector<double>& x() const { return x_; }
  [[nodiscard]] const std::vector<double>& y() const { return y_; }
  [[nodiscard]] const std::vector<double>& slopes() const { return m_; }
  [[nodiscard]] bool empty() const { return x_.empty(); }

 private:
  std::vector<double> x_, y_, m_;
};

std::vector<double> pchip_slopes(std::span<const double> x, std::span<const double> y);

}  // namespace magineq
