#pragma once

#include <vector>

#include "phasecontract/half_int.hpp"
#include "phasecontract/special_functions.hpp"

namespace phasecontract {

/// Product quadrature on the sphere: Gauss-Legendre in cos(theta) times the
/// uniform trapezoid rule in phi. Integrates Y_lm exactly for
/// l <= bandlimit() = min(2 n_theta - 1, n_phi - 1). Weights sum to 4 pi.
/// Point index i = theta_index * n_phi + phi_index, theta ascending.
class SphereGrid {
 public:
  static SphereGrid gauss_legendre(int n_theta, int n_phi);

  /// Smallest exact grid for symbol x kernel products of spin s:
  /// n_theta = 2s + 2, n_phi = 4s + 2, bandlimit 4s + 1.
  static SphereGrid for_spin(HalfInt s);

  /// Rebuilds a grid from explicit nodes. `theta_weights` are the weights in
  /// cos(theta) (summing to 2). Throws DomainError on inconsistent input.
  static SphereGrid from_nodes(std::vector<double> theta, std::vector<double> theta_weights, int n_phi);

  int n_theta() const { return static_cast<int>(theta_.size()); }
  int n_phi() const { return n_phi_; }
  int bandlimit() const;
  std::size_t size() const { return theta_.size() * static_cast<std::size_t>(n_phi_); }

  SpherePoint point(std::size_t index) const;
  double weight(std::size_t index) const;

  const std::vector<double>& theta_nodes() const { return theta_; }
  const std::vector<double>& theta_weights() const { return theta_weights_; }

 private:
  std::vector<double> theta_;
  std::vector<double> theta_weights_;
  int n_phi_ = 0;
};

/// Gauss-Legendre nodes and weights on [-1, 1], ascending nodes.
void gauss_legendre_rule(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace phasecontract
