#pragma once

#include "divsel/arith.hpp"

#include <compare>
#include <string>
#include <string_view>

namespace divsel {

/// An exact rational in lowest terms with positive denominator.
using ReducedFraction = Rational;

/// Result of reading a fraction literal: either the value or a message.
struct FractionParse {
  std::optional<Rational> value;
  std::string error;
};

/// Reads "a/b" or "a" (decimal, optional sign on a). Never throws.
inline FractionParse parse_fraction(std::string_view text) {
  auto slash = text.find('/');
  auto num = parse_integer(text.substr(0, slash));
  if (!num) return {std::nullopt, "malformed fraction '" + std::string(text) + "'"};
  if (slash == std::string_view::npos) return {Rational(*num), {}};
  auto den_text = text.substr(slash + 1);
  auto den = parse_integer(den_text);
  if (!den || den_text.empty() || den_text[0] == '+')
    return {std::nullopt, "malformed fraction '" + std::string(text) + "'"};
  if (*den <= 0) return {std::nullopt, "denominator must be positive"};
  return {Rational(*num, *den), {}};
}

/// An element of Q/Z, stored as its representative in [0, 1).
class QMod1 {
 public:
  QMod1() = default;
  explicit QMod1(const Rational& r) : value_(reduce(r)) {}
  QMod1(const Integer& num, const Integer& den) : QMod1(Rational(num, den)) {}

  Integer numerator() const { return boost::multiprecision::numerator(value_); }
  Integer denominator() const { return boost::multiprecision::denominator(value_); }
  const Rational& representative() const { return value_; }
  bool is_zero() const { return value_ == 0; }

  /// Additive order in Q/Z.
  Integer order() const { return denominator(); }

  QMod1 operator+(const QMod1& o) const { return QMod1(value_ + o.value_); }
  QMod1 operator-(const QMod1& o) const { return QMod1(value_ - o.value_); }
  QMod1 operator-() const { return QMod1(-value_); }
  QMod1 operator*(const Integer& k) const { return QMod1(value_ * k); }
  QMod1& operator+=(const QMod1& o) { return *this = *this + o; }

  friend bool operator==(const QMod1& a, const QMod1& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const QMod1& a, const QMod1& b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (b.value_ < a.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  std::string str() const { return to_string(value_); }

 private:
  static Rational reduce(const Rational& r) {
    Integer num = boost::multiprecision::numerator(r);
    const Integer den = boost::multiprecision::denominator(r);
    num %= den;
    if (num < 0) num += den;
    return Rational(num, den);
  }

  Rational value_{0};
};

inline std::string to_string(const QMod1& q) { return q.str(); }

}  // namespace divsel
