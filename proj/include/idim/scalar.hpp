#pragma once

#include <compare>
#include <optional>
#include <string>

#include "idim/rational.hpp"

namespace idim {

/// A real number held exactly as a Rational when possible, otherwise as a
/// double.
///
/// Arithmetic between two exact operands stays exact; once either side is
/// inexact, or an exact result would overflow 64-bit terms, the result
/// degrades to floating point. Counting measures (k/n) and grid points
/// therefore keep exact arithmetic end to end, while arbitrary weights
/// still work.
class Scalar {
 public:
  Scalar() : exact_(Rational(0)) {}
  Scalar(Rational value) : exact_(value) {}                 // NOLINT(implicit)
  Scalar(std::int64_t value) : exact_(Rational(value)) {}   // NOLINT(implicit)
  Scalar(int value) : exact_(Rational(value)) {}            // NOLINT(implicit)
  static Scalar inexact(double value);

  bool is_exact() const { return exact_.has_value(); }
  /// Precondition: is_exact().
  const Rational& exact() const { return *exact_; }
  double to_double() const { return exact_ ? exact_->to_double() : approx_; }
  bool is_zero() const { return exact_ ? exact_->is_zero() : approx_ == 0.0; }

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }

  /// Exact comparison when both sides are exact, otherwise compares doubles.
  friend std::partial_ordering operator<=>(const Scalar& a, const Scalar& b);
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return (a <=> b) == std::partial_ordering::equivalent;
  }

  /// "p/q" when exact, otherwise 17 significant digits.
  std::string str() const;
  /// Always 17 significant digits.
  std::string decimal() const;

 private:
  std::optional<Rational> exact_;
  double approx_ = 0.0;
};

/// Absolute slack used when inexact probability masses are compared.
inline constexpr double kMassTolerance = 1e-12;

/// a >= b, exactly for exact operands and with kMassTolerance otherwise.
bool at_least(const Scalar& a, const Scalar& b);

std::string format_double(double value);

inline Scalar min(const Scalar& a, const Scalar& b) { return b < a ? b : a; }
inline Scalar max(const Scalar& a, const Scalar& b) { return a < b ? b : a; }

}  // namespace idim
