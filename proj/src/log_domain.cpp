#include "phasecontract/log_domain.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>

#include "phasecontract/errors.hpp"

namespace phasecontract {

LogDomainReal LogDomainReal::from_double(double v) {
  if (v == 0.0) return zero();
  return {v > 0 ? 1 : -1, std::log(std::abs(v))};
}

double LogDomainReal::to_double() const {
  if (is_zero()) return 0.0;
  if (log_magnitude > std::log(std::numeric_limits<double>::max()))
    throw std::overflow_error("log-domain value exceeds double range");
  return sign * std::exp(log_magnitude);
}

LogDomainReal LogDomainReal::operator/(const LogDomainReal& o) const {
  if (o.is_zero()) throw DomainError("log-domain division by zero");
  if (is_zero()) return zero();
  return {sign * o.sign, log_magnitude - o.log_magnitude};
}

LogDomainReal LogDomainReal::sqrt() const {
  if (sign < 0) throw DomainError("square root of a negative log-domain value");
  if (is_zero()) return zero();
  return {1, 0.5 * log_magnitude};
}

LogDomainReal LogDomainSum::value() const {
  if (terms_.empty()) return LogDomainReal::zero();
  const double peak =
      std::max_element(terms_.begin(), terms_.end(), [](const auto& a, const auto& b) {
        return a.log_magnitude < b.log_magnitude;
      })->log_magnitude;
  CompensatedSum acc;
  for (const auto& t : terms_) acc += t.sign * std::exp(t.log_magnitude - peak);
  const double scaled = acc.value();
  if (scaled == 0.0) return LogDomainReal::zero();
  return {scaled > 0 ? 1 : -1, peak + std::log(std::abs(scaled))};
}

double LogDomainSum::cancellation_ratio() const {
  if (terms_.empty()) return 1.0;
  const auto total = value();
  if (total.is_zero()) return std::numeric_limits<double>::infinity();
  double peak = terms_.front().log_magnitude;
  for (const auto& t : terms_) peak = std::max(peak, t.log_magnitude);
  return std::exp(peak - total.log_magnitude);
}

namespace {

std::atomic<int> requested_table_bound{4 * 2048 + 2};

const std::vector<double>& table() {
  static const std::vector<double> values = [] {
    const int bound = requested_table_bound.load();
    std::vector<double> v(static_cast<std::size_t>(bound) + 1);
    for (int n = 0; n <= bound; ++n) v[n] = std::lgamma(n + 1.0);
    return v;
  }();
  return values;
}

}  // namespace

void configure_log_factorial_table(int max_argument) {
  requested_table_bound.store(std::max(max_argument, 16));
}

int log_factorial_table_size() { return static_cast<int>(table().size()); }

double log_factorial(int n) {
  if (n < 0) throw DomainError("log_factorial of a negative argument");
  const auto& t = table();
  if (static_cast<std::size_t>(n) < t.size()) return t[n];
  return std::lgamma(n + 1.0);
}

}  // namespace phasecontract
