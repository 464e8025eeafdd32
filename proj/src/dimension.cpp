#include "idim/dimension.hpp"

#include <limits>

namespace idim {

Dimension Dimension::from_integral(const Scalar& integral) {
  if (integral.is_zero()) return infinite();
  return finite(Scalar(1) / (integral * integral));
}

double Dimension::to_double() const {
  return value_ ? value_->to_double() : std::numeric_limits<double>::infinity();
}

std::string Dimension::str() const { return value_ ? value_->str() : "inf"; }

std::string Dimension::decimal() const { return value_ ? value_->decimal() : "inf"; }

std::partial_ordering operator<=>(const Dimension& a, const Dimension& b) {
  if (a.is_infinite() || b.is_infinite()) {
    return a.is_infinite() == b.is_infinite()
               ? std::partial_ordering::equivalent
               : (a.is_infinite() ? std::partial_ordering::greater
                                  : std::partial_ordering::less);
  }
  return a.value() <=> b.value();
}

}  // namespace idim
