#pragma once

// Exact integer and rational arithmetic used throughout the library.
// Integers are unbounded; no floating point is used anywhere.

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/miller_rabin.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace divsel {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Base class of every hard error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A place id that does not belong to the place set in use.
class UnknownPlaceError : public Error {
 public:
  explicit UnknownPlaceError(std::string_view id)
      : Error("unknown place '" + std::string(id) + "'"), id_(id) {}
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

/// An operation was called outside its domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

inline Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(a, b);
}

inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  Integer r = a / gcd(a, b) * b;
  return r < 0 ? Integer(-r) : r;
}

inline bool divides(const Integer& d, const Integer& n) {
  if (d == 0) return n == 0;
  return n % d == 0;
}

inline Integer ipow(const Integer& base, unsigned exponent) {
  Integer r = 1;
  for (unsigned i = 0; i < exponent; ++i) r *= base;
  return r;
}

/// Largest v with p^v | n. Requires n != 0 and p > 1.
inline unsigned valuation(Integer n, const Integer& p) {
  if (n == 0 || p <= 1) throw PreconditionError("valuation needs n != 0 and p > 1");
  if (n < 0) n = -n;
  unsigned v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

inline bool is_prime(const Integer& n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  if (n < Integer(1) << 40) {
    for (Integer d = 3; d * d <= n; d += 2)
      if (n % d == 0) return false;
    return true;
  }
  return boost::multiprecision::miller_rabin_test(n, 32);
}

/// Distinct prime divisors of |n| in increasing order (trial division).
inline std::vector<Integer> prime_divisors(Integer n) {
  if (n < 0) n = -n;
  std::vector<Integer> primes;
  for (Integer d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    primes.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) primes.push_back(n);
  return primes;
}

/// Positive divisors of n > 0 in increasing order.
inline std::vector<Integer> divisors(const Integer& n) {
  std::vector<Integer> small, large;
  for (Integer d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d * d != n) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

/// Parses an optionally signed decimal integer; rejects anything else.
inline std::optional<Integer> parse_integer(std::string_view text) {
  std::size_t start = 0;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) start = 1;
  if (start == text.size()) return std::nullopt;
  for (std::size_t i = start; i < text.size(); ++i)
    if (text[i] < '0' || text[i] > '9') return std::nullopt;
  Integer value(std::string(text.substr(start)));
  return text[0] == '-' ? Integer(-value) : value;
}

inline std::string to_string(const Integer& n) { return n.str(); }

/// "a/b" with b > 0, always written with the slash.
inline std::string to_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace divsel
