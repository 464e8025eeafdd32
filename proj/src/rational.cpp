#include "idim/rational.hpp"

#include <charconv>
#include <limits>

namespace idim {
namespace {

using Wide = __int128;

Wide wide_abs(Wide v) { return v < 0 ? -v : v; }

Wide wide_gcd(Wide a, Wide b) {
  a = wide_abs(a);
  b = wide_abs(b);
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits(Wide v) {
  return v >= std::numeric_limits<std::int64_t>::min() &&
         v <= std::numeric_limits<std::int64_t>::max();
}

Rational expect(std::optional<Rational> r, const char* what) {
  if (!r) throw RationalOverflow(std::string("rational overflow in ") + what);
  return *r;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  *this = expect(from_wide(num, den), "construction");
}

std::optional<Rational> Rational::from_wide(Wide num, Wide den) {
  if (den == 0) throw std::domain_error("rational division by zero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Wide g = wide_gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (!fits(num) || !fits(den)) return std::nullopt;
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

double Rational::to_double() const {
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::optional<Rational> Rational::try_add(const Rational& a, const Rational& b) {
  if (a.den_ == b.den_) return from_wide(Wide(a.num_) + b.num_, a.den_);
  // Denominators are < 2^63, so the cross products fit comfortably in 128 bits.
  Wide g = wide_gcd(a.den_, b.den_);
  Wide da = a.den_ / g;
  Wide db = b.den_ / g;
  return from_wide(Wide(a.num_) * db + Wide(b.num_) * da, da * b.den_);
}

std::optional<Rational> Rational::try_sub(const Rational& a, const Rational& b) {
  return try_add(a, -b);
}

std::optional<Rational> Rational::try_mul(const Rational& a, const Rational& b) {
  Wide g1 = wide_gcd(a.num_, b.den_);
  Wide g2 = wide_gcd(b.num_, a.den_);
  if (g1 == 0) g1 = 1;
  if (g2 == 0) g2 = 1;
  return from_wide((Wide(a.num_) / g1) * (Wide(b.num_) / g2),
                   (Wide(a.den_) / g2) * (Wide(b.den_) / g1));
}

std::optional<Rational> Rational::try_div(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw std::domain_error("rational division by zero");
  Rational inv;
  inv.num_ = b.num_ < 0 ? -b.den_ : b.den_;
  inv.den_ = b.num_ < 0 ? -b.num_ : b.num_;
  return try_mul(a, inv);
}

Rational operator+(const Rational& a, const Rational& b) {
  return expect(Rational::try_add(a, b), "addition");
}
Rational operator-(const Rational& a, const Rational& b) {
  return expect(Rational::try_sub(a, b), "subtraction");
}
Rational operator*(const Rational& a, const Rational& b) {
  return expect(Rational::try_mul(a, b), "multiplication");
}
Rational operator/(const Rational& a, const Rational& b) {
  return expect(Rational::try_div(a, b), "division");
}

Rational Rational::operator-() const {
  if (num_ == std::numeric_limits<std::int64_t>::min()) {
    throw RationalOverflow("rational overflow in negation");
  }
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  return Wide(a.num_) * b.den_ <=> Wide(b.num_) * a.den_;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
  };
  auto parse_int = [&](std::string_view s) -> std::int64_t {
    std::int64_t v = 0;
    if (s.empty()) fail();
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) fail();
    return v;
  };

  if (text.empty()) fail();
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::int64_t den = parse_int(text.substr(slash + 1));
    if (den == 0) fail();
    return Rational(parse_int(text.substr(0, slash)), den);
  }
  auto dot = text.find('.');
  if (dot == std::string_view::npos) return Rational(parse_int(text));

  bool negative = false;
  std::string_view whole = text.substr(0, dot);
  std::string_view frac = text.substr(dot + 1);
  if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) {
    negative = whole.front() == '-';
    whole.remove_prefix(1);
  }
  if (whole.empty() && frac.empty()) fail();
  if (frac.size() > 18) fail();
  for (char c : whole) if (c < '0' || c > '9') fail();
  for (char c : frac) if (c < '0' || c > '9') fail();

  std::int64_t scale = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
  Rational value = Rational(whole.empty() ? 0 : parse_int(whole)) +
                   Rational(frac.empty() ? 0 : parse_int(frac), scale);
  return negative ? -value : value;
}

}  // namespace idim
