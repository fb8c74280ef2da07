#include "phasecontract/sqrt_rational.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/integer.hpp>

#include "phasecontract/errors.hpp"

namespace phasecontract {

namespace mp = boost::multiprecision;

namespace {

bool integer_sqrt(const BigInt& n, BigInt& root) {
  if (n < 0) return false;
  BigInt rem;
  root = mp::sqrt(n, rem);
  return rem == 0;
}

}  // namespace

bool rational_sqrt(const Rational& r, Rational& root) {
  if (r < 0) return false;
  BigInt a, b;
  if (!integer_sqrt(mp::numerator(r), a) || !integer_sqrt(mp::denominator(r), b)) return false;
  root = Rational(a, b);
  return true;
}

SqrtRational::SqrtRational(int sign, BigInt numerator, BigInt denominator) {
  if (denominator <= 0) throw DomainError("SqrtRational requires a positive denominator");
  if (numerator < 0) throw DomainError("SqrtRational requires a non-negative radicand");
  if (sign == 0 || numerator == 0) return;
  const BigInt g = mp::gcd(numerator, denominator);
  sign_ = sign > 0 ? 1 : -1;
  num_ = numerator / g;
  den_ = denominator / g;
}

SqrtRational SqrtRational::from_rational(const Rational& r) {
  if (r == 0) return zero();
  const Rational sq = r * r;
  return {r > 0 ? 1 : -1, mp::numerator(sq), mp::denominator(sq)};
}

Rational SqrtRational::square() const { return Rational(num_, den_); }

double SqrtRational::to_double() const {
  if (is_zero()) return 0.0;
  using Float = mp::cpp_bin_float_50;
  const Float ratio = Float(num_) / Float(den_);
  return sign_ * static_cast<double>(mp::sqrt(ratio));
}

SqrtRational SqrtRational::operator-() const {
  SqrtRational r = *this;
  r.sign_ = -r.sign_;
  return r;
}

SqrtRational SqrtRational::operator*(const SqrtRational& o) const {
  if (is_zero() || o.is_zero()) return zero();
  return {sign_ * o.sign_, num_ * o.num_, den_ * o.den_};
}

SqrtRational SqrtRational::operator*(const Rational& r) const {
  if (is_zero() || r == 0) return zero();
  const Rational sq = r * r;
  return {r > 0 ? sign_ : -sign_, num_ * mp::numerator(sq), den_ * mp::denominator(sq)};
}

bool SqrtRational::commensurable_with(const SqrtRational& o) const {
  if (is_zero() || o.is_zero()) return true;
  Rational root;
  return rational_sqrt(square() / o.square(), root);
}

SqrtRational SqrtRational::operator+(const SqrtRational& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  // sign*sqrt(p) + o.sign*sqrt(q) = sqrt(q) * (sign*sqrt(p/q) + o.sign)
  Rational ratio;
  if (!rational_sqrt(square() / o.square(), ratio))
    throw DomainError("sum of incommensurable square roots " + str() + " and " + o.str());
  const Rational factor = sign_ * ratio + o.sign_;
  return SqrtRational(1, o.num_, o.den_) * factor;
}

std::string SqrtRational::str() const {
  if (is_zero()) return "0";
  return std::string(sign_ > 0 ? "+" : "-") + "sqrt(" + num_.str() + "/" + den_.str() + ")";
}

}  // namespace phasecontract
