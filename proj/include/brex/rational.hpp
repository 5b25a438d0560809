#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace brex {

/// Exact rational with normalized sign and lowest terms. Responsibility
/// values are always 0 or 1/(k+1), so int64 components never overflow; the
/// type still normalizes arbitrary inputs so dumps and tests can construct
/// values freely.
class Rational {
 public:
  constexpr Rational() = default;

  constexpr Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const std::int64_t g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  /// 1/(k+1) for witness size k.
  static constexpr Rational responsibility_for_witness(std::int64_t k) {
    return Rational(1, k + 1);
  }

  constexpr std::int64_t num() const { return num_; }
  constexpr std::int64_t den() const { return den_; }
  constexpr bool is_zero() const { return num_ == 0; }
  constexpr double value() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  friend constexpr bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend constexpr bool operator!=(const Rational& a, const Rational& b) {
    return !(a == b);
  }
  friend constexpr bool operator<(const Rational& a, const Rational& b) {
    return a.num_ * b.den_ < b.num_ * a.den_;
  }
  friend constexpr bool operator>(const Rational& a, const Rational& b) {
    return b < a;
  }

  std::string to_string() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace brex
