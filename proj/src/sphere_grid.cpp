#include "phasecontract/sphere_grid.hpp"

#include <cmath>
#include <numbers>

#include "phasecontract/errors.hpp"

namespace phasecontract {

void gauss_legendre_rule(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw DomainError("gauss_legendre_rule: need at least one node");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  if (n == 1) {
    weights[0] = 2.0;
    return;
  }
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute the derivative at the converged node
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) nodes[n / 2] = 0.0;
}

SphereGrid SphereGrid::gauss_legendre(int n_theta, int n_phi) {
  if (n_theta < 1 || n_phi < 1) throw DomainError("SphereGrid: grid sizes must be positive");
  std::vector<double> x, w;
  gauss_legendre_rule(n_theta, x, w);
  SphereGrid g;
  g.n_phi_ = n_phi;
  // ascending theta <-> descending cos(theta)
  for (int i = n_theta - 1; i >= 0; --i) {
    g.theta_.push_back(std::acos(x[i]));
    g.theta_weights_.push_back(w[i]);
  }
  return g;
}

SphereGrid SphereGrid::for_spin(HalfInt s) {
  if (s.twice() < 0) throw DomainError("SphereGrid::for_spin: s must be non-negative");
  return gauss_legendre(s.twice() + 2, 2 * s.twice() + 2);
}

SphereGrid SphereGrid::from_nodes(std::vector<double> theta, std::vector<double> theta_weights, int n_phi) {
  if (theta.empty() || theta.size() != theta_weights.size() || n_phi < 1)
    throw DomainError("SphereGrid::from_nodes: inconsistent node data");
  double total = 0.0;
  for (double w : theta_weights) total += w;
  if (std::abs(total - 2.0) > 1e-9) throw DomainError("SphereGrid::from_nodes: cos(theta) weights must sum to 2");
  SphereGrid g;
  g.theta_ = std::move(theta);
  g.theta_weights_ = std::move(theta_weights);
  g.n_phi_ = n_phi;
  return g;
}

int SphereGrid::bandlimit() const { return std::min(2 * n_theta() - 1, n_phi_ - 1); }

SpherePoint SphereGrid::point(std::size_t index) const {
  const std::size_t it = index / n_phi_, ip = index % n_phi_;
  return {theta_.at(it), 2.0 * std::numbers::pi * static_cast<double>(ip) / n_phi_};
}

double SphereGrid::weight(std::size_t index) const {
  return theta_weights_.at(index / n_phi_) * 2.0 * std::numbers::pi / n_phi_;
}

}  // namespace phasecontract
