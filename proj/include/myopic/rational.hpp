#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace myopic {

// Exact rational arithmetic on 64-bit numerator/denominator, with 128-bit
// intermediates. Enough headroom for elimination on small 0/1 systems.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(long long num, long long den = 1) { assign(num, den); }

  long long num() const { return num_; }
  long long den() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from128(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                   static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return from128(static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_,
                   static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from128(static_cast<__int128>(a.num_) * b.num_,
                   static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return from128(static_cast<__int128>(a.num_) * b.den_,
                   static_cast<__int128>(a.den_) * b.num_);
  }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  static Rational from128(__int128 num, __int128 den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    __int128 g = gcd128(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    constexpr __int128 lo = -static_cast<__int128>(INT64_MAX);
    constexpr __int128 hi = static_cast<__int128>(INT64_MAX);
    if (num < lo || num > hi || den > hi)
      throw std::overflow_error("rational arithmetic overflow");
    Rational r;
    r.num_ = static_cast<long long>(num);
    r.den_ = static_cast<long long>(den);
    return r;
  }

  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a == 0 ? 1 : a;
  }

  void assign(long long num, long long den) {
    *this = from128(num, den);
  }

  long long num_ = 0;
  long long den_ = 1;
};

}  // namespace myopic
