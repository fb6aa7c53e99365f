#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

namespace tmseq {

/// Exact multiple of 1/3, stored as three times its value.
class third {
 public:
  constexpr third() = default;
  static constexpr third from_num3(std::int64_t n) { return third(n); }
  static constexpr third from_int(std::int64_t v) { return third(3 * v); }

  constexpr std::int64_t num3() const { return num3_; }
  constexpr bool is_integer() const { return num3_ % 3 == 0; }
  double to_double() const { return static_cast<double>(num3_) / 3.0; }

  constexpr third operator-() const { return third(-num3_); }
  constexpr third& operator+=(third o) {
    num3_ += o.num3_;
    return *this;
  }
  constexpr third& operator-=(third o) {
    num3_ -= o.num3_;
    return *this;
  }
  friend constexpr third operator+(third a, third b) { return a += b; }
  friend constexpr third operator-(third a, third b) { return a -= b; }
  friend constexpr bool operator==(third, third) = default;
  friend constexpr auto operator<=>(third, third) = default;

  std::string str() const {
    if (is_integer()) return std::to_string(num3_ / 3);
    return std::to_string(num3_) + "/3";
  }

  friend std::ostream& operator<<(std::ostream& os, third t) { return os << t.str(); }

 private:
  constexpr explicit third(std::int64_t n) : num3_(n) {}
  std::int64_t num3_ = 0;
};

}  // namespace tmseq
