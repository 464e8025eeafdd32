#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace idim {

/// Thrown when an exact rational operation does not fit in 64-bit terms.
class RationalOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Exact fraction num/den with den > 0 and gcd(num, den) == 1.
///
/// Intermediate products are formed in 128 bits; a result whose reduced
/// terms do not fit in int64 raises RationalOverflow. The `try_*` variants
/// report overflow through an empty optional instead.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t value) : num_(value) {}  // NOLINT(implicit)
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  double to_double() const;

  static std::optional<Rational> try_add(const Rational& a, const Rational& b);
  static std::optional<Rational> try_sub(const Rational& a, const Rational& b);
  static std::optional<Rational> try_mul(const Rational& a, const Rational& b);
  static std::optional<Rational> try_div(const Rational& a, const Rational& b);

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const;

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  /// "p/q", or "p" for integers.
  std::string str() const;

  /// Accepts "p", "p/q", and plain decimals such as "0.6" or "-.25" (parsed
  /// exactly, so "0.6" is 3/5). Throws std::invalid_argument on bad input.
  static Rational parse(std::string_view text);

 private:
  static std::optional<Rational> from_wide(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace idim
