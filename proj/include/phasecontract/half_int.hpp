#pragma once

#include <compare>
#include <cstdlib>
#include <string>
#include <string_view>

namespace phasecontract {

/// An angular-momentum quantum number j or projection m, stored as the
/// integer 2j so that half-integers are represented exactly.
class HalfInt {
 public:
  constexpr HalfInt() = default;

  static constexpr HalfInt from_twice(int twice) { return HalfInt(twice); }
  static constexpr HalfInt from_int(int value) { return HalfInt(2 * value); }

  constexpr int twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  constexpr double value() const { return 0.5 * twice_; }

  // Throws DomainError when the value is not an integer.
  int to_int() const;

  constexpr HalfInt operator-() const { return HalfInt(-twice_); }
  constexpr HalfInt operator+(HalfInt o) const { return HalfInt(twice_ + o.twice_); }
  constexpr HalfInt operator-(HalfInt o) const { return HalfInt(twice_ - o.twice_); }
  constexpr HalfInt& operator+=(HalfInt o) {
    twice_ += o.twice_;
    return *this;
  }
  constexpr HalfInt& operator-=(HalfInt o) {
    twice_ -= o.twice_;
    return *this;
  }

  constexpr auto operator<=>(const HalfInt&) const = default;

  // "3/2", "-1/2", "2".
  std::string str() const;

 private:
  constexpr explicit HalfInt(int twice) : twice_(twice) {}
  int twice_ = 0;
};

constexpr HalfInt abs(HalfInt h) { return h.twice() < 0 ? -h : h; }

/// Accepts "3/2", "-1/2", "1.5", "2".
HalfInt parse_half_int(std::string_view text);

/// |m| <= j and j - m integer.
constexpr bool is_projection_of(HalfInt m, HalfInt j) {
  return j.twice() >= 0 && std::abs(m.twice()) <= j.twice() &&
         (j.twice() - m.twice()) % 2 == 0;
}

/// Triangle rule |j1 - j2| <= J <= j1 + j2 with j1 + j2 + J integer.
constexpr bool satisfies_triangle(HalfInt j1, HalfInt j2, HalfInt J) {
  const int a = j1.twice(), b = j2.twice(), c = J.twice();
  return a >= 0 && b >= 0 && c >= 0 && c >= std::abs(a - b) && c <= a + b &&
         (a + b + c) % 2 == 0;
}

namespace literals {
constexpr HalfInt operator""_h(unsigned long long v) {
  return HalfInt::from_int(static_cast<int>(v));
}
}  // namespace literals

}  // namespace phasecontract
