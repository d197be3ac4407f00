#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace twspin {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Checked 64-bit helpers. Every overflow raises Error(Overflow); nothing wraps.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_sub(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

/// Least nonnegative residue of a modulo n (n >= 1).
constexpr std::int64_t mod_floor(std::int64_t a, std::int64_t n) {
  std::int64_t m = a % n;
  return m < 0 ? m + n : m;
}

/// Floor division for n >= 1.
constexpr std::int64_t div_floor(std::int64_t a, std::int64_t n) {
  return (a - mod_floor(a, n)) / n;
}

struct ExtendedGcd {
  std::int64_t g;  // >= 0
  std::int64_t x;
  std::int64_t y;  // a*x + b*y == g
};

ExtendedGcd extended_gcd(std::int64_t a, std::int64_t b);

BigInt big_pow(std::int64_t base, std::int64_t exponent);

/// Exact rational with a 64-bit numerator and denominator. Arithmetic goes
/// through 128-bit intermediates and throws on overflow of the reduced result.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT(implicit)
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  std::int64_t floor() const { return div_floor(num_, den_); }

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  Rational operator/(std::int64_t d) const;

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  std::string str() const;

 private:
  static Rational from_wide(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& q);

std::string to_string(const BigInt& v);

}  // namespace twspin
