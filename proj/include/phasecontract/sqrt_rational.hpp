#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace phasecontract {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact value sign * sqrt(numerator / denominator), kept in lowest terms.
/// This is the closed form of every Clebsch-Gordan coefficient.
class SqrtRational {
 public:
  SqrtRational() = default;  // zero
  SqrtRational(int sign, BigInt numerator, BigInt denominator);

  static SqrtRational zero() { return {}; }
  static SqrtRational one() { return {1, 1, 1}; }
  /// sign(r) * sqrt(r^2): the exact square root representation of a rational.
  static SqrtRational from_rational(const Rational& r);

  int sign() const { return sign_; }
  const BigInt& numerator() const { return num_; }
  const BigInt& denominator() const { return den_; }
  bool is_zero() const { return sign_ == 0; }

  /// The radicand numerator / denominator.
  Rational square() const;

  double to_double() const;

  SqrtRational operator-() const;
  SqrtRational operator*(const SqrtRational& o) const;
  SqrtRational operator*(const Rational& r) const;

  /// Exact only when the radicands are commensurable (their ratio is the
  /// square of a rational). Throws DomainError otherwise.
  SqrtRational operator+(const SqrtRational& o) const;
  SqrtRational operator-(const SqrtRational& o) const { return *this + (-o); }

  bool commensurable_with(const SqrtRational& o) const;

  bool operator==(const SqrtRational& o) const = default;

  /// "0", "-sqrt(1/2)", "+sqrt(3/4)".
  std::string str() const;

 private:
  int sign_ = 0;
  BigInt num_ = 0;
  BigInt den_ = 1;
};

/// Exact square root of a non-negative rational if it is rational.
bool rational_sqrt(const Rational& r, Rational& root);

}  // namespace phasecontract
