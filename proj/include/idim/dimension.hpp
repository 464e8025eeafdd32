#pragma once

#include <compare>
#include <optional>
#include <string>

#include "idim/scalar.hpp"

namespace idim {

/// An extended real in [1, inf]: either a finite Scalar or the tagged
/// infinite value. Never represented by a floating overflow.
class Dimension {
 public:
  static Dimension infinite() { return Dimension(); }
  static Dimension finite(Scalar value) { return Dimension(std::move(value)); }

  /// 1 / integral^2, or infinite when the integral is zero.
  static Dimension from_integral(const Scalar& integral);

  bool is_infinite() const { return !value_.has_value(); }
  /// Precondition: !is_infinite().
  const Scalar& value() const { return *value_; }
  double to_double() const;

  /// "inf", or the exact "p/q" form when available.
  std::string str() const;
  /// "inf", or 17 significant digits.
  std::string decimal() const;

  friend std::partial_ordering operator<=>(const Dimension& a, const Dimension& b);
  friend bool operator==(const Dimension& a, const Dimension& b) {
    return (a <=> b) == std::partial_ordering::equivalent;
  }

 private:
  Dimension() = default;
  explicit Dimension(Scalar v) : value_(std::move(v)) {}

  std::optional<Scalar> value_;
};

}  // namespace idim
