#pragma once

#include <cmath>
#include <numbers>

#include "phasecontract/linalg.hpp"

namespace phasecontract {

/// Point on the unit sphere, n = (sin t cos p, sin t sin p, cos t).
struct SpherePoint {
  double theta = 0.0;
  double phi = 0.0;

  static constexpr SpherePoint north_pole() { return {0.0, 0.0}; }

  Eigen::Vector3d unit_vector() const {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
  }
  /// phi is reduced to [0, 2 pi); the poles get phi = 0.
  static SpherePoint from_vector(const Eigen::Vector3d& v);
};

/// Orthonormal Y_lm with the Condon-Shortley phase. Throws DomainError for
/// |m| > l or l < 0.
Complex spherical_harmonic(int l, int m, SpherePoint point);

/// Laguerre polynomial L_n(x) by the three-term recurrence.
double laguerre(int n, double x);

/// The explicit sum  sum_k C(n,k) (-x)^k / k!  (compensated; cancels for large x).
double laguerre_explicit_sum(int n, double x);

/// Associated Laguerre polynomial L_n^(k)(x) by upward recurrence in n.
double associated_laguerre(int n, double k, double x);

/// Normalized Hermite function psi_n(x) = (2^n n! sqrt(pi))^(-1/2) H_n(x) e^{-x^2/2},
/// by the stable normalized recurrence.
double hermite_function(int n, double x);

}  // namespace phasecontract
