#pragma once

#include <compare>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace vcsp {

/// Arbitrary-precision rational, always kept canonical (lowest terms, q >= 1).
using Rational = mpq_class;

/// Renders `p/q` in lowest terms, or bare `p` when q = 1.
std::string to_string(const Rational& value);

/// Accepts `p`, `-p` or `p/q` (q != 0). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// A rational number extended with positive infinity.
///
/// Multiplication follows 0 * inf = 0 and x * inf = inf for x > 0; a negative
/// value times infinity is rejected with std::domain_error.
class ExtRational {
 public:
  ExtRational() = default;
  ExtRational(long value) : value_(value) {}
  ExtRational(const Rational& value) : value_(value) { value_.canonicalize(); }

  static ExtRational infinity() {
    ExtRational r;
    r.infinite_ = true;
    return r;
  }

  bool is_finite() const noexcept { return !infinite_; }
  bool is_infinite() const noexcept { return infinite_; }

  /// Throws std::domain_error for infinity.
  const Rational& finite_value() const;

  /// Canonical rendering; `inf` for infinity.
  std::string str() const;
  static ExtRational parse(std::string_view text);

  ExtRational& operator+=(const ExtRational& other);
  friend ExtRational operator+(ExtRational lhs, const ExtRational& rhs) {
    lhs += rhs;
    return lhs;
  }
  friend ExtRational operator*(const ExtRational& lhs, const ExtRational& rhs);

  /// Division by a strictly positive finite rational; inf / q = inf.
  friend ExtRational operator/(const ExtRational& lhs, const Rational& divisor);

  friend bool operator==(const ExtRational& lhs, const ExtRational& rhs);
  friend std::strong_ordering operator<=>(const ExtRational& lhs, const ExtRational& rhs);

 private:
  Rational value_{0};
  bool infinite_ = false;
};

}  // namespace vcsp
