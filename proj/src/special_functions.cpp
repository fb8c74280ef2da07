#include "phasecontract/special_functions.hpp"

#include <cmath>

#include "phasecontract/errors.hpp"
#include "phasecontract/log_domain.hpp"

namespace phasecontract {

SpherePoint SpherePoint::from_vector(const Eigen::Vector3d& v) {
  const double r = v.norm();
  if (r == 0.0) throw DomainError("SpherePoint::from_vector: zero vector");
  const double rho = std::hypot(v.x(), v.y());
  SpherePoint p{std::atan2(rho, v.z()), 0.0};
  if (rho > 0.0) {
    p.phi = std::atan2(v.y(), v.x());
    if (p.phi < 0.0) p.phi += 2.0 * std::numbers::pi;
  }
  return p;
}

Complex spherical_harmonic(int l, int m, SpherePoint point) {
  if (l < 0 || std::abs(m) > l) throw DomainError("spherical_harmonic: need |m| <= l, l >= 0");
  const unsigned ul = static_cast<unsigned>(l);
  const unsigned um = static_cast<unsigned>(std::abs(m));
  // std::sph_legendre includes the Condon-Shortley factor (-1)^m.
  const double theta_part = std::sph_legendre(ul, um, point.theta);
  const Complex value = theta_part * std::polar(1.0, std::abs(m) * point.phi);
  if (m >= 0) return value;
  return ((um % 2 == 0) ? 1.0 : -1.0) * std::conj(value);
}

double laguerre_explicit_sum(int n, double x) {
  if (n < 0) throw DomainError("laguerre: n must be non-negative");
  CompensatedSum sum;
  // C(n,k) (-x)^k / k!, built incrementally
  double term = 1.0;
  sum += term;
  for (int k = 1; k <= n; ++k) {
    term *= -x * static_cast<double>(n - k + 1) / (static_cast<double>(k) * k);
    sum += term;
  }
  return sum.value();
}

double laguerre(int n, double x) {
  if (n < 0) throw DomainError("laguerre: n must be non-negative");
  if (n == 0) return 1.0;
  // the explicit sum cancels badly for large x; the upward recurrence does not
  double prev = 1.0, cur = 1.0 - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double associated_laguerre(int n, double k, double x) {
  if (n < 0) throw DomainError("associated_laguerre: n must be non-negative");
  if (n == 0) return 1.0;
  double prev = 1.0, cur = 1.0 + k - x;
  for (int i = 1; i < n; ++i) {
    const double next = ((2.0 * i + 1.0 + k - x) * cur - (i + k) * prev) / (i + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double hermite_function(int n, double x) {
  if (n < 0) throw DomainError("hermite_function: n must be non-negative");
  const double psi0 = std::exp(-0.5 * x * x) / std::pow(std::numbers::pi, 0.25);
  if (n == 0) return psi0;
  double prev = psi0, cur = std::sqrt(2.0) * x * psi0;
  for (int k = 1; k < n; ++k) {
    const double next = std::sqrt(2.0 / (k + 1.0)) * x * cur - std::sqrt(k / (k + 1.0)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace phasecontract
