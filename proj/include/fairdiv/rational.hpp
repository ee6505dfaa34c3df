#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <iosfwd>
#include <string>

namespace fairdiv {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational number with arbitrary-precision integer numerator and
// denominator. The engine does all value arithmetic with this type: the
// adversarial streams separate outcomes by 2^-m-scale differences, so any
// floating-point shortcut would silently break the lower-bound checks.
//
// Invariant: den > 0 and gcd(num, den) == 1 (zero is stored as 0/1).
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long value) : num_(value), den_(1) {}  // NOLINT: implicit by design
  Rational(BigInt numerator, BigInt denominator);

  static Rational from_int(long long value) { return Rational(value); }

  // Parses "p/q" or a bare integer "p". Throws std::invalid_argument on
  // malformed input or a zero denominator.
  static Rational parse(const std::string& text);

  // Canonical form "p/q" with q >= 1, e.g. "27/16", "-3/4", "5/1".
  // parse(format()) round-trips exactly.
  std::string format() const;

  // Lossy conversion for reporting columns only; never used in decisions.
  double to_double() const;

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }
  bool is_positive() const { return num_ > 0; }
  bool is_integer() const { return den_ == 1; }

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);  // throws on division by zero

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.num_ * b.den_ < b.num_ * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  void normalize();

  BigInt num_;
  BigInt den_;
};

Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);
Rational abs(const Rational& r);

// 2^exponent as an exact rational; exponent may be negative.
Rational pow2(long long exponent);

}  // namespace fairdiv
