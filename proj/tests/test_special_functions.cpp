#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "phasecontract/diagnostics.hpp"
#include "phasecontract/errors.hpp"
#include "phasecontract/parallel.hpp"
#include "phasecontract/special_functions.hpp"
#include "phasecontract/sphere_grid.hpp"

using namespace phasecontract;
using boost::multiprecision::cpp_rational;

namespace {

// Exact rational L_n(x) for rational x, from the explicit sum.
cpp_rational laguerre_exact(int n, const cpp_rational& x) {
  cpp_rational sum = 0, binom = 1, power = 1, fact = 1;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) {
      binom = binom * (n - k + 1) / k;
      power *= -x;
      fact *= k;
    }
    sum += binom * power / fact;
  }
  return sum;
}

}  // namespace

TEST(SphericalHarmonic, KnownValues) {
  const SpherePoint p{0.7, 1.3};
  EXPECT_NEAR(std::abs(spherical_harmonic(0, 0, p) - 0.5 / std::sqrt(std::numbers::pi)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(spherical_harmonic(1, 0, p) - std::sqrt(3.0 / (4 * std::numbers::pi)) * std::cos(0.7)), 0.0, 1e-15);
  const Complex y11 = -std::sqrt(3.0 / (8 * std::numbers::pi)) * std::sin(0.7) * std::polar(1.0, 1.3);
  EXPECT_NEAR(std::abs(spherical_harmonic(1, 1, p) - y11), 0.0, 1e-15);
  EXPECT_THROW(spherical_harmonic(2, 3, p), DomainError);
  EXPECT_THROW(spherical_harmonic(-1, 0, p), DomainError);
}

TEST(SphericalHarmonic, ConjugationSymmetry) {
  const SpherePoint p{2.1, 4.0};
  for (int l = 0; l <= 30; l += 3)
    for (int m = 0; m <= l; ++m) {
      const Complex a = spherical_harmonic(l, -m, p);
      const Complex b = (m % 2 ? -1.0 : 1.0) * std::conj(spherical_harmonic(l, m, p));
      EXPECT_NEAR(std::abs(a - b), 0.0, 1e-13);
    }
}

TEST(SphericalHarmonic, OrthonormalOnGrid) {
  const auto grid = SphereGrid::gauss_legendre(12, 23);
  ASSERT_EQ(grid.bandlimit(), 22);
  double worst = 0.0;
  for (int l1 = 0; l1 <= 11; ++l1)
    for (int m1 = -l1; m1 <= l1; ++m1)
      for (int l2 = 0; l2 <= 11; ++l2)
        for (int m2 = -l2; m2 <= l2; m2 += 3) {
          Complex s = 0.0;
          for (std::size_t i = 0; i < grid.size(); ++i)
            s += grid.weight(i) * std::conj(spherical_harmonic(l1, m1, grid.point(i))) * spherical_harmonic(l2, m2, grid.point(i));
          const double want = (l1 == l2 && m1 == m2) ? 1.0 : 0.0;
          worst = std::max(worst, std::abs(s - want));
        }
  EXPECT_LT(worst, 1e-13);
}

TEST(SphericalHarmonic, LargeDegreeAddition) {
  // sum_m |Y_lm|^2 = (2l+1)/(4 pi)
  const SpherePoint p{1.1, 0.3};
  for (int l : {50, 200, 800}) {
    double s = 0.0;
    for (int m = -l; m <= l; ++m) s += std::norm(spherical_harmonic(l, m, p));
    EXPECT_NEAR(s, (2 * l + 1) / (4 * std::numbers::pi), 1e-11 * l);
  }
}

TEST(Laguerre, MatchesExactRational) {
  for (int n = 0; n <= 40; ++n)
    for (int xi : {0, 1, 3, 7, 20, 45}) {
      const double e = laguerre_exact(n, xi).convert_to<double>();
      const double got = laguerre(n, xi);
      EXPECT_NEAR(got, e, 1e-12 * std::max(1.0, std::abs(e))) << n << " " << xi;
    }
}

TEST(Laguerre, RecurrenceAgreesWithExplicitSum) {
  for (int n = 0; n <= 15; ++n)
    for (double x : {0.1, 1.0, 5.0}) {
      const double r = laguerre(n, x);
      EXPECT_NEAR(laguerre_explicit_sum(n, x), r, 1e-10 * std::abs(r)) << n << " " << x;
    }
}

TEST(Laguerre, AssociatedReducesAndRecurs) {
  for (int n = 0; n <= 10; ++n) EXPECT_NEAR(associated_laguerre(n, 0.0, 2.3), laguerre(n, 2.3), 1e-13);
  // L_n^(k)(x) = L_n^(k+1)(x) - L_{n-1}^(k+1)(x)
  for (int n = 1; n <= 10; ++n)
    for (int k : {0, 1, 4})
      EXPECT_NEAR(associated_laguerre(n, k, 1.7),
                  associated_laguerre(n, k + 1, 1.7) - associated_laguerre(n - 1, k + 1, 1.7), 1e-11);
  EXPECT_NEAR(associated_laguerre(3, 2.0, 0.0), 10.0, 1e-13);  // C(n+k, n)
}

TEST(Hermite, LowOrdersAndOrthonormality) {
  const double pi4 = std::pow(std::numbers::pi, -0.25);
  EXPECT_NEAR(hermite_function(0, 0.0), pi4, 1e-15);
  EXPECT_NEAR(hermite_function(1, 0.8), std::sqrt(2.0) * 0.8 * pi4 * std::exp(-0.32), 1e-15);
  const double h = 0.02;
  for (int a = 0; a <= 12; a += 3)
    for (int b = 0; b <= 12; ++b) {
      double s = 0.0;
      for (double x = -25.0; x <= 25.0; x += h) s += hermite_function(a, x) * hermite_function(b, x) * h;
      EXPECT_NEAR(s, a == b ? 1.0 : 0.0, 1e-12) << a << " " << b;
    }
}

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  std::vector<double> x, w;
  gauss_legendre_rule(9, x, w);
  ASSERT_EQ(x.size(), 9u);
  for (std::size_t i = 1; i < x.size(); ++i) EXPECT_LT(x[i - 1], x[i]);
  for (int k = 0; k <= 17; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * std::pow(x[i], k);
    EXPECT_NEAR(s, k % 2 ? 0.0 : 2.0 / (k + 1), 1e-14) << k;
  }
}

TEST(SphereGrid, SizesAndWeights) {
  const auto g = SphereGrid::for_spin(HalfInt::from_twice(5));
  EXPECT_EQ(g.n_theta(), 7);
  EXPECT_EQ(g.n_phi(), 12);
  EXPECT_EQ(g.bandlimit(), 11);
  double total = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) total += g.weight(i);
  EXPECT_NEAR(total, 4 * std::numbers::pi, 1e-13);
  // index layout: theta outer, ascending
  EXPECT_LT(g.point(0).theta, g.point(g.size() - 1).theta);
  EXPECT_DOUBLE_EQ(g.point(1).theta, g.point(0).theta);
}

TEST(SphereGrid, FromNodesValidates) {
  const auto g = SphereGrid::gauss_legendre(4, 7);
  const auto r = SphereGrid::from_nodes(g.theta_nodes(), g.theta_weights(), 7);
  EXPECT_EQ(r.size(), g.size());
  EXPECT_THROW(SphereGrid::from_nodes({0.5, 1.0}, {1.0}, 4), DomainError);
  EXPECT_THROW(SphereGrid::from_nodes({0.5, 1.0}, {1.0, 0.5}, 4), DomainError);
  EXPECT_THROW(SphereGrid::from_nodes(g.theta_nodes(), g.theta_weights(), 0), DomainError);
}

TEST(SpherePoint, VectorRoundTrip) {
  const SpherePoint p{2.0, 5.5};
  const auto q = SpherePoint::from_vector(p.unit_vector());
  EXPECT_NEAR(q.theta, p.theta, 1e-14);
  EXPECT_NEAR(q.phi, p.phi, 1e-14);
  EXPECT_EQ(SpherePoint::from_vector({0, 0, -3}).phi, 0.0);
}

TEST(Parallel, CoversEveryIndexAndRethrows) {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) EXPECT_EQ(h, 1);
  EXPECT_THROW(parallel_for(10, [](std::size_t i) {
                 if (i == 7) throw DomainError("x");
               }),
               DomainError);
  EXPECT_GE(worker_count(), 1u);
}

TEST(Diagnostics, HandlerReceivesWarnings) {
  std::vector<std::string> seen;
  auto prev = set_warning_handler([&](std::string_view m) { seen.emplace_back(m); });
  warn("first");
  warn("second");
  set_warning_handler(prev);
  ASSERT_EQ(seen.size(), 2u);
  EXPECT_EQ(seen[1], "second");
}
