#include "phasecontract/half_int.hpp"

#include <charconv>
#include <cmath>

#include "phasecontract/errors.hpp"

namespace phasecontract {

int HalfInt::to_int() const {
  if (!is_integer()) throw DomainError("half-integer " + str() + " used where an integer is required");
  return twice_ / 2;
}

std::string HalfInt::str() const {
  if (is_integer()) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

namespace {

bool parse_int(std::string_view s, int& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

HalfInt parse_half_int(std::string_view text) {
  const auto bad = [&] { return DomainError("not a half-integer: '" + std::string(text) + "'"); };
  if (text.empty()) throw bad();

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    int num = 0, den = 0;
    if (!parse_int(text.substr(0, slash), num) || !parse_int(text.substr(slash + 1), den)) throw bad();
    if (den == 1) return HalfInt::from_int(num);
    if (den != 2) throw bad();
    return HalfInt::from_twice(num);
  }

  int whole = 0;
  if (parse_int(text, whole)) return HalfInt::from_int(whole);

  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) throw bad();
  const double twice = 2.0 * v;
  if (std::abs(twice - std::round(twice)) > 1e-12) throw bad();
  return HalfInt::from_twice(static_cast<int>(std::lround(twice)));
}

}  // namespace phasecontract
