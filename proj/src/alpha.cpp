#include "wharm/alpha.hpp"

#include <cmath>
#include <sstream>

#include "wharm/errors.hpp"

namespace wharm {

AlphaParam AlphaParam::parse(std::string_view text) {
  return AlphaParam(parse_rational(text));
}

Rational AlphaParam::exact() const {
  if (exact_) return *exact_;
  if (!std::isfinite(value_)) throw DomainError("alpha is not finite");
  return Rational(value_);
}

bool AlphaParam::half_plane_valid() const {
  return exact_ ? *exact_ > -1 : value_ > -1.0;
}

bool AlphaParam::is_zero() const { return exact_ ? sgn(*exact_) == 0 : value_ == 0.0; }

bool AlphaParam::is_negative_integer() const {
  if (exact_) return exact_->get_den() == 1 && sgn(*exact_) < 0;
  return value_ < 0.0 && std::floor(value_) == value_;
}

std::string AlphaParam::to_string() const {
  if (exact_) return format_rational(*exact_);
  std::ostringstream os;
  os.precision(17);
  os << value_;
  return os.str();
}

}  // namespace wharm
