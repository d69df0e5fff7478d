#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "wharm/rational.hpp"

namespace wharm {

/// The weight parameter alpha. Exact when built from a rational; the double
/// shadow is always populated and used by every floating-point routine.
class AlphaParam {
 public:
  AlphaParam() : AlphaParam(Rational(0)) {}
  explicit AlphaParam(const Rational& q) : exact_(q), value_(q.get_d()) {}
  explicit AlphaParam(double v) : value_(v) {}

  /// "num/den", integers and decimal literals ("-0.9", "2.5e-1") parse exactly.
  /// Throws DomainError on malformed text.
  static AlphaParam parse(std::string_view text);

  double value() const noexcept { return value_; }
  bool is_exact() const noexcept { return exact_.has_value(); }
  /// The exact rational; a float-path parameter yields the exact dyadic value of its double.
  Rational exact() const;

  bool half_plane_valid() const;
  bool is_zero() const;
  /// True for alpha in {-1, -2, ...}.
  bool is_negative_integer() const;

  std::string to_string() const;

 private:
  std::optional<Rational> exact_;
  double value_;
};

}  // namespace wharm
