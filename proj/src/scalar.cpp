#include "idim/scalar.hpp"

#include <cmath>
#include <cstdio>

namespace idim {

Scalar Scalar::inexact(double value) {
  Scalar s;
  s.exact_.reset();
  s.approx_ = value;
  return s;
}

namespace {

template <typename ExactOp, typename FloatOp>
Scalar combine(const Scalar& a, const Scalar& b, ExactOp exact_op, FloatOp float_op) {
  if (a.is_exact() && b.is_exact()) {
    if (auto r = exact_op(a.exact(), b.exact())) return Scalar(*r);
  }
  return Scalar::inexact(float_op(a.to_double(), b.to_double()));
}

}  // namespace

Scalar operator+(const Scalar& a, const Scalar& b) {
  return combine(a, b, Rational::try_add, [](double x, double y) { return x + y; });
}
Scalar operator-(const Scalar& a, const Scalar& b) {
  return combine(a, b, Rational::try_sub, [](double x, double y) { return x - y; });
}
Scalar operator*(const Scalar& a, const Scalar& b) {
  return combine(a, b, Rational::try_mul, [](double x, double y) { return x * y; });
}
Scalar operator/(const Scalar& a, const Scalar& b) {
  if (b.is_zero()) throw std::domain_error("scalar division by zero");
  return combine(a, b, Rational::try_div, [](double x, double y) { return x / y; });
}

std::partial_ordering operator<=>(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return a.exact() <=> b.exact();
  return a.to_double() <=> b.to_double();
}

bool at_least(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return a.exact() >= b.exact();
  return a.to_double() >= b.to_double() - kMassTolerance;
}

std::string format_double(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string Scalar::str() const { return exact_ ? exact_->str() : format_double(approx_); }

std::string Scalar::decimal() const { return format_double(to_double()); }

}  // namespace idim
