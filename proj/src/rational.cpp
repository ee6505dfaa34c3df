#include "fairdiv/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace fairdiv {

namespace {

BigInt parse_big_int(const std::string& text) {
  if (text.empty()) {
    throw std::invalid_argument("rational: empty integer literal");
  }
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) {
    throw std::invalid_argument("rational: sign without digits: '" + text + "'");
  }
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') {
      throw std::invalid_argument("rational: invalid digit in '" + text + "'");
    }
  }
  return BigInt(text);
}

}  // namespace

Rational::Rational(BigInt numerator, BigInt denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_ == 0) {
    throw std::invalid_argument("rational: zero denominator");
  }
  normalize();
}

void Rational::normalize() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  BigInt g = boost::multiprecision::gcd(num_, den_);
  num_ /= g;
  den_ /= g;
}

Rational Rational::parse(const std::string& text) {
  std::size_t slash = text.find('/');
  if (slash == std::string::npos) {
    return Rational(parse_big_int(text), 1);
  }
  BigInt num = parse_big_int(text.substr(0, slash));
  BigInt den = parse_big_int(text.substr(slash + 1));
  if (den == 0) {
    throw std::invalid_argument("rational: zero denominator in '" + text + "'");
  }
  return Rational(std::move(num), std::move(den));
}

std::string Rational::format() const {
  return num_.str() + "/" + den_.str();
}

double Rational::to_double() const {
  return static_cast<double>(boost::multiprecision::cpp_rational(num_, den_));
}

Rational Rational::operator-() const {
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational& Rational::operator+=(const Rational& rhs) {
  num_ = num_ * rhs.den_ + rhs.num_ * den_;
  den_ *= rhs.den_;
  normalize();
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  num_ = num_ * rhs.den_ - rhs.num_ * den_;
  den_ *= rhs.den_;
  normalize();
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  num_ *= rhs.num_;
  den_ *= rhs.den_;
  normalize();
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.num_ == 0) {
    throw std::invalid_argument("rational: division by zero");
  }
  num_ *= rhs.den_;
  den_ *= rhs.num_;
  normalize();
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.format();
}

Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }
Rational abs(const Rational& r) { return r.is_negative() ? -r : r; }

Rational pow2(long long exponent) {
  BigInt p = 1;
  p <<= static_cast<unsigned>(exponent < 0 ? -exponent : exponent);
  if (exponent >= 0) {
    return Rational(p, 1);
  }
  return Rational(1, p);
}

}  // namespace fairdiv
