#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace sumlab {

// Exact rational arithmetic on int64 numerator/denominator.  All set
// measures, thresholds, and inequality verdicts flow through this type;
// intermediates are widened to 128 bits so that products of two grid-scale
// denominators (N^2 with N up to ~10^6) never overflow.
class Rational {
public:
  Rational() = default;
  Rational(std::int64_t value) : num_(value), den_(1) {}
  Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    *this = reduce(num, den);
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return reduce(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return reduce(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return reduce(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::invalid_argument("Rational: division by zero");
    return reduce(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }
  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Smallest rational of the form k/2^30 that is >= x.  Used to round
  // irrational bound terms outward so exact comparisons stay conservative.
  static Rational ceil_from_double(double x) {
    const double scale = static_cast<double>(std::int64_t{1} << 30);
    double scaled = x * scale;
    if (scaled > 9.0e18 || scaled < -9.0e18)
      throw std::overflow_error("Rational::ceil_from_double: out of range");
    auto k = static_cast<std::int64_t>(scaled);
    if (static_cast<double>(k) < scaled) ++k;
    return Rational(k, std::int64_t{1} << 30);
  }

private:
  using i128 = __int128;

  static Rational reduce(i128 num, i128 den) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    i128 a = num < 0 ? -num : num;
    i128 g = gcd128(a, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num > INT64_MAX || num < INT64_MIN || den > INT64_MAX)
      throw std::overflow_error("Rational: value does not fit in 64 bits after reduction");
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    if (r.den_ == 0) throw std::invalid_argument("Rational: zero denominator");
    return r;
  }

  static i128 gcd128(i128 a, i128 b) {
    while (b != 0) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace sumlab
