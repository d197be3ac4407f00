#include "twspin/arith.hpp"

#include <limits>

#include "twspin/errors.hpp"

namespace twspin {

namespace {

std::int64_t narrow(__int128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw Error(ErrorKind::Overflow, "64-bit range exceeded");
  }
  return static_cast<std::int64_t>(v);
}

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "addition overflow");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "subtraction overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "multiplication overflow");
  return r;
}

ExtendedGcd extended_gcd(std::int64_t a, std::int64_t b) {
  __int128 old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    __int128 q = old_r / r;
    __int128 tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  return {narrow(old_r), narrow(old_s), narrow(old_t)};
}

BigInt big_pow(std::int64_t base, std::int64_t exponent) {
  if (exponent < 0) throw Error(ErrorKind::InvalidArgument, "negative exponent");
  BigInt result = 1;
  BigInt b = base;
  while (exponent > 0) {
    if (exponent & 1) result *= b;
    b *= b;
    exponent >>= 1;
  }
  return result;
}

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator");
  *this = from_wide(num, den);
}

Rational Rational::from_wide(__int128 num, __int128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  Rational q;
  q.num_ = narrow(num);
  q.den_ = narrow(den);
  return q;
}

Rational Rational::operator-() const { return from_wide(-static_cast<__int128>(num_), den_); }

Rational& Rational::operator+=(const Rational& o) {
  if (den_ == o.den_) {
    *this = from_wide(static_cast<__int128>(num_) + o.num_, den_);
  } else {
    *this = from_wide(static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_,
                      static_cast<__int128>(den_) * o.den_);
  }
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  // Cross-reduce first so the 128-bit products stay small.
  __int128 g1 = gcd128(num_, o.den_);
  __int128 g2 = gcd128(o.num_, den_);
  if (g1 == 0) g1 = 1;
  if (g2 == 0) g2 = 1;
  *this = from_wide((static_cast<__int128>(num_) / g1) * (o.num_ / g2),
                    (static_cast<__int128>(den_) / g2) * (o.den_ / g1));
  return *this;
}

Rational Rational::operator/(std::int64_t d) const {
  if (d == 0) throw Error(ErrorKind::InvalidArgument, "division by zero");
  return from_wide(num_, static_cast<__int128>(den_) * d);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
  __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
  return lhs <=> rhs;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

std::string to_string(const BigInt& v) { return v.str(); }

std::string_view error_kind_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidGraph: return "InvalidGraph";
    case ErrorKind::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorKind::BadIndex: return "BadIndex";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::MultiIndexLengthMismatch: return "MultiIndexLengthMismatch";
    case ErrorKind::UnsupportedGenus: return "UnsupportedGenus";
    case ErrorKind::SizeLimitExceeded: return "SizeLimitExceeded";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::IllDefinedHom: return "IllDefinedHom";
    case ErrorKind::DomainTooLarge: return "DomainTooLarge";
    case ErrorKind::NonIntegralTotal: return "NonIntegralTotal";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::AugmentationNonzero: return "AugmentationNonzero";
    case ErrorKind::NotCoprime: return "NotCoprime";
    case ErrorKind::GraphMismatch: return "GraphMismatch";
    case ErrorKind::NotRational: return "NotRational";
    case ErrorKind::StabilizerNotDivisible: return "StabilizerNotDivisible";
    case ErrorKind::BadAutOrder: return "BadAutOrder";
    case ErrorKind::FibreExceedsDegree: return "FibreExceedsDegree";
    case ErrorKind::BadR: return "BadR";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace twspin
