#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "magineq/interp.hpp"

namespace magineq {

enum class BoundKind { lower, upper, sharp_numeric };

std::string_view to_string(BoundKind k);

/// Sampled map parameter -> bound value with monotone cubic interpolation.
class BoundCurve {
 public:
  BoundCurve() = default;
  /// Throws InputError for an unsorted grid or non-finite values.
  BoundCurve(std::string parameter_name, std::vector<double> parameters, std::vector<double> values,
             BoundKind kind, std::string provenance);

  [[nodiscard]] const std::string& parameter_name() const { return name_; }
  [[nodiscard]] const std::vector<double>& parameters() const { return interp_.x(); }
  [[nodiscard]] const std::vector<double>& values() const { return interp_.y(); }
  [[nodiscard]] BoundKind kind() const { return kind_; }
  [[nodiscard]] const std::string& provenance() const { return provenance_; }
  [[nodiscard]] std::size_t size() const { return interp_.x().size(); }

  [[nodiscard]] bool increasing() const;
  /// Index of the first sample breaking strict increase, or size().
  [[nodiscard]] std::size_t first_violation() const;
  /// Largest second difference (divided-difference form); <= 0 for
  /// concave samples.
  [[nodiscard]] double max_second_difference() const;

  /// Interpolated value; RangeError outside the sampled range.
  [[nodiscard]] double evaluate(double parameter) const;
  /// Parameter whose interpolated value equals `target`. CurveError for
  /// non-monotone samples, RangeError outside the value range.
  [[nodiscard]] double invert(double target) const;

 private:
  std::string name_;
  MonotoneCubic interp_;
  BoundKind kind_ = BoundKind::sharp_numeric;
  std::string provenance_;
};

inline double invert_curve(const BoundCurve& curve, double target) { return curve.invert(target); }

}  // namespace magineq
