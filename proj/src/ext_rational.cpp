#include "vcsp/ext_rational.hpp"

#include <cctype>
#include <stdexcept>

namespace vcsp {

std::string to_string(const Rational& value) { return value.get_str(); }

namespace {

bool is_integer_literal(std::string_view s, bool allow_sign) {
  if (allow_sign && !s.empty() && s.front() == '-') s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  if (!is_integer_literal(num, true)) {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  if (slash != std::string_view::npos) {
    const std::string_view den = text.substr(slash + 1);
    if (!is_integer_literal(den, false)) {
      throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    }
    mpz_class d(std::string(den), 10);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rational r(mpz_class(std::string(num), 10), d);
    r.canonicalize();
    return r;
  }
  return Rational(mpz_class(std::string(num), 10));
}

const Rational& ExtRational::finite_value() const {
  if (infinite_) throw std::domain_error("finite_value() called on inf");
  return value_;
}

std::string ExtRational::str() const { return infinite_ ? std::string("inf") : to_string(value_); }

ExtRational ExtRational::parse(std::string_view text) {
  if (text == "inf") return infinity();
  return ExtRational(parse_rational(text));
}

ExtRational& ExtRational::operator+=(const ExtRational& other) {
  if (infinite_) return *this;
  if (other.infinite_) {
    infinite_ = true;
    value_ = 0;
    return *this;
  }
  value_ += other.value_;
  return *this;
}

ExtRational operator*(const ExtRational& lhs, const ExtRational& rhs) {
  if (lhs.is_finite() && rhs.is_finite()) return ExtRational(Rational(lhs.value_ * rhs.value_));
  if (lhs.is_infinite() && rhs.is_infinite()) return ExtRational::infinity();
  const Rational& scale = lhs.is_finite() ? lhs.value_ : rhs.value_;
  const int s = sgn(scale);
  if (s == 0) return ExtRational(0);
  if (s < 0) throw std::domain_error("negative value multiplied by inf");
  return ExtRational::infinity();
}

ExtRational operator/(const ExtRational& lhs, const Rational& divisor) {
  if (sgn(divisor) <= 0) throw std::domain_error("division by a non-positive value");
  if (lhs.is_infinite()) return lhs;
  return ExtRational(Rational(lhs.value_ / divisor));
}

bool operator==(const ExtRational& lhs, const ExtRational& rhs) {
  if (lhs.infinite_ || rhs.infinite_) return lhs.infinite_ == rhs.infinite_;
  return lhs.value_ == rhs.value_;
}

std::strong_ordering operator<=>(const ExtRational& lhs, const ExtRational& rhs) {
  if (lhs.infinite_ || rhs.infinite_) {
    return static_cast<int>(lhs.infinite_) <=> static_cast<int>(rhs.infinite_);
  }
  return cmp(lhs.value_, rhs.value_) <=> 0;
}

}  // namespace vcsp
