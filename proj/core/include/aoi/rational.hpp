#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

#include "aoi/errors.hpp"

namespace aoi {

/// Exact non-negative fraction of two costs. Always stored reduced.
class Ratio {
 public:
  constexpr Ratio() = default;
  Ratio(std::int64_t num, std::int64_t den) {
    if (den <= 0) throw ParameterError("ratio denominator must be positive");
    const std::int64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

  friend bool operator==(const Ratio& a, const Ratio& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator<(const Ratio& a, const Ratio& b) {
    return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
  }
  friend bool operator>(const Ratio& a, const Ratio& b) { return b < a; }
  friend bool operator<=(const Ratio& a, const Ratio& b) { return !(b < a); }
  friend bool operator>=(const Ratio& a, const Ratio& b) { return !(a < b); }
  friend std::ostream& operator<<(std::ostream& os, const Ratio& r) { return os << r.str(); }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace aoi
