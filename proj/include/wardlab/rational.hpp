#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace wardlab {

// Exact ratio of 64-bit integers. Densities are counts over horizons, so
// magnitudes stay far below the overflow range; comparisons cross-multiply
// in 128 bits.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return !(a == b);
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ <
           static_cast<__int128>(b.num_) * a.den_;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return !(b < a);
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) {
    return !(a < b);
  }

  Rational operator+(const Rational& o) const {
    return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }
  Rational operator-(const Rational& o) const {
    return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
  }

  std::string to_fraction_string() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Decimal expansion by long division; exact when it terminates within
  // max_digits (always the case when den = 2^a * 5^b after reduction).
  std::string to_decimal_string(int max_digits = 18) const {
    std::int64_t n = num_;
    std::string out;
    if (n < 0) {
      out += '-';
      n = -n;
    }
    out += std::to_string(n / den_);
    std::int64_t rem = n % den_;
    if (rem == 0) return out;
    out += '.';
    for (int i = 0; i < max_digits && rem != 0; ++i) {
      rem *= 10;
      out += static_cast<char>('0' + rem / den_);
      rem %= den_;
    }
    return out;
  }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace wardlab
