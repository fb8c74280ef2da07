#pragma once

#include <cmath>
#include <limits>
#include <vector>

namespace phasecontract {

/// Compensated (Kahan-Babuska / Neumaier) accumulator. Terms of any order
/// of magnitude may be added; the running error is folded back on read.
class CompensatedSum {
 public:
  CompensatedSum& operator+=(double value) {
    const double t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value))
      compensation_ += (sum_ - t) + value;
    else
      compensation_ += (value - t) + sum_;
    sum_ = t;
    return *this;
  }

  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

/// sign * exp(log_magnitude). Products and quotients are exact in the
/// exponent; conversion back to double is checked against overflow.
struct LogDomainReal {
  int sign = 0;
  double log_magnitude = -std::numeric_limits<double>::infinity();

  static LogDomainReal zero() { return {}; }
  static LogDomainReal from_log(int sign, double log_magnitude) {
    if (sign == 0) return zero();
    return {sign > 0 ? 1 : -1, log_magnitude};
  }
  static LogDomainReal from_double(double v);

  bool is_zero() const { return sign == 0; }

  // Throws std::overflow_error when exp(log_magnitude) is not representable.
  double to_double() const;

  LogDomainReal operator*(const LogDomainReal& o) const {
    if (is_zero() || o.is_zero()) return zero();
    return {sign * o.sign, log_magnitude + o.log_magnitude};
  }
  LogDomainReal operator/(const LogDomainReal& o) const;
  LogDomainReal operator-() const { return {-sign, log_magnitude}; }
  LogDomainReal sqrt() const;  // requires sign >= 0
};

/// Sum of log-domain terms: the largest magnitude is factored out and the
/// scaled mantissas are added with a compensated accumulator.
class LogDomainSum {
 public:
  void add(const LogDomainReal& term) {
    if (!term.is_zero()) terms_.push_back(term);
  }

  LogDomainReal value() const;

  /// max |term| / |sum|; infinity for an exact cancellation to zero. A large
  /// ratio means the digits of the result were lost to cancellation.
  double cancellation_ratio() const;

  std::size_t size() const { return terms_.size(); }

 private:
  std::vector<LogDomainReal> terms_;
};

/// log(n!) for n >= 0. Values below the table bound come from a table built
/// once on first use; larger arguments are evaluated directly. Both routes
/// give bitwise-identical results.
double log_factorial(int n);

/// Sets the table bound used by the first call to log_factorial(). Has no
/// effect once the table exists. Default covers 4 * (2 s_max) + 2 with
/// 2 s_max = 2048.
void configure_log_factorial_table(int max_argument);

int log_factorial_table_size();

}  // namespace phasecontract
