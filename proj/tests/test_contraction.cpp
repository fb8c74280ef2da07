#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <vector>

#include "phasecontract/clebsch_gordan.hpp"
#include "phasecontract/contraction.hpp"
#include "phasecontract/diagnostics.hpp"
#include "phasecontract/errors.hpp"
#include "phasecontract/linalg.hpp"
#include "phasecontract/particle_kernel.hpp"
#include "phasecontract/special_functions.hpp"
#include "phasecontract/spin_kernel.hpp"
#include "phasecontract/spin_operators.hpp"

using namespace phasecontract;

namespace {

HalfInt h(int twice) { return HalfInt::from_twice(twice); }
double sgn(int n) { return n % 2 ? -1.0 : 1.0; }

}  // namespace

TEST(ContractionScale, Normalization) {
  for (int tw : {1, 2, 9, 400}) {
    const auto sc = ContractionScale::for_spin(h(tw));
    EXPECT_NEAR(2 * sc.c * sc.c * h(tw).value(), 1.0, 1e-15);
  }
  EXPECT_THROW(ContractionScale::for_spin(HalfInt()), DomainError);
  EXPECT_THROW(ContractionScale::for_spin(h(-2)), DomainError);
}

TEST(ContractedOperators, SpectrumAndCommutators) {
  const HalfInt s = h(100);
  const auto op = contracted_operators(s, ContractionScale::for_spin(s));
  const int d = spin_dimension(s);
  const ComplexMatrix I = ComplexMatrix::Identity(d, d);
  for (int n = 0; n < d; ++n) EXPECT_NEAR(op.Az(n, n).real(), n, 1e-12);
  const double c2 = 1.0 / s.twice();
  EXPECT_LT(max_abs(commutator(op.Aminus, op.Aplus) - (I - 2 * c2 * op.Az)), 1e-12);
  // [A^z, A^+-] = +-A^+-
  EXPECT_LT(max_abs(commutator(op.Az, op.Aplus) - op.Aplus), 1e-12);
  EXPECT_LT(max_abs(commutator(op.Az, op.Aminus) + op.Aminus), 1e-12);
  EXPECT_LT(max_abs(commutator(op.Aminus, op.Az) - op.Aminus), 1e-12);
  EXPECT_LT(max_abs(commutator(op.Aplus, op.Az) + op.Aplus), 1e-12);
  // low block approaches the Fock ladder: <n+1|A^+|n> = sqrt(n+1) sqrt(1 - n/(2s))
  for (int n = 0; n < 5; ++n) EXPECT_NEAR(op.Aplus(n + 1, n).real(), std::sqrt((n + 1) * (1 - n / 100.0)), 1e-12);
}

TEST(ContractedRotation, ApproachesDisplacement) {
  const Complex alpha(0.4, 0.3);
  double prev = 1e9;
  for (int tw : {100, 200, 400}) {
    const ComplexMatrix U = contracted_rotation(h(tw), alpha);
    EXPECT_LT(unitarity_residual(U), 1e-10);
    const ComplexMatrix T = displacement(FockSpace(4), {alpha});
    const double dev = max_abs(U.topLeftCorner(5, 5) - T);
    EXPECT_LT(dev, prev);
    prev = dev;
  }
  EXPECT_LT(prev, 0.02);
  EXPECT_LT(max_abs(contracted_rotation(h(10), 0.0) - ComplexMatrix::Identity(11, 11)), 1e-14);
}

TEST(ContractedRotation, WarnsPastHalfTurn) {
  std::vector<std::string> seen;
  auto prev = set_warning_handler([&](std::string_view m) { seen.emplace_back(m); });
  contracted_rotation(h(2), Complex(3.0, 0.0));
  set_warning_handler(prev);
  EXPECT_EQ(seen.size(), 1u);
}

TEST(TermDelta, MatchesExactClebschGordan) {
  for (int tw = 0; tw <= 20; ++tw) {
    const HalfInt s = h(tw);
    for (int n = 0; n <= tw; ++n)
      for (int l = 0; l <= tw; ++l) {
        const HalfInt m = s - HalfInt::from_int(n);
        const double cg = clebsch_gordan(s, m, s, -m, HalfInt::from_int(l), HalfInt()).to_double();
        EXPECT_NEAR(term_delta(s, l, n), std::sqrt((2.0 * l + 1) / (tw + 1.0)) * cg, 5e-14);
      }
  }
  EXPECT_NEAR(term_delta(h(4), 0, 0), 1.0 / 5.0, 1e-16);
  EXPECT_THROW(term_delta(h(4), 5, 0), DomainError);
  EXPECT_THROW(term_delta(h(4), 0, 5), DomainError);
}

TEST(TermDelta, FactorizesIntoLambda) {
  // Delta_{l,n} / Delta_{l,0} -> Lambda_n(x_l) = (-1)^n L_n(x_l)
  for (int tw : {400, 1600}) {
    const HalfInt s = h(tw);
    double worst = 0.0;
    for (int n = 0; n <= 3; ++n)
      for (int l = 0; l <= 30; ++l) {
        const double x = l * (l + 1.0) / (tw + 1.0);
        const double ratio = term_delta(s, l, n) / term_delta(s, l, 0);
        worst = std::max(worst, std::abs(ratio - lambda_recursion(n, x)[n]));
      }
    EXPECT_LT(worst, 10.0 / s.value()) << tw;
  }
}

TEST(Lambda, RecursionIsSignedLaguerre) {
  for (double x : {0.0, 0.5, 2.0, 9.0}) {
    const auto lam = lambda_recursion(12, x);
    ASSERT_EQ(lam.size(), 13u);
    EXPECT_EQ(lam[0], 1.0);
    for (int n = 0; n <= 12; ++n) EXPECT_NEAR(lam[n], sgn(n) * laguerre(n, x), 1e-11 * std::max(1.0, std::abs(lam[n])));
  }
  EXPECT_NEAR(lambda_recursion(1, 2.0)[1], 1.0, 1e-15);
}

TEST(LaguerreIntegral, ClosedForm) {
  // Int L_n e^{-x/t} = t (1 - t)^n
  for (double t : {0.5, 1.0, 2.0, 3.0})
    for (int n = 0; n <= 8; ++n) EXPECT_NEAR(laguerre_integral(n, t), t * std::pow(1 - t, n), 1e-9 * std::max(1.0, std::pow(std::abs(1 - t), n)));
  EXPECT_NEAR(laguerre_integral(0, 2.0), 2.0, 1e-12);
  EXPECT_NEAR(laguerre_integral(1, 2.0), -2.0, 1e-12);
  EXPECT_NEAR(laguerre_integral(3, 1.0), 0.0, 1e-12);
  EXPECT_THROW(laguerre_integral(1, 0.0), DomainError);
}

TEST(LaguerreIntegral, RiemannSumConverges) {
  for (int n = 0; n <= 3; ++n) {
    double prev = 1e9;
    for (int tw : {200, 400, 800}) {
      const double err = std::abs(laguerre_riemann_sum(h(tw), n) - 2 * sgn(n));
      EXPECT_LT(err, 10.0 / h(tw).value());
      EXPECT_LT(err, prev);
      prev = err;
    }
  }
}

TEST(ContractionSum, AllPlusApproachesParticleDiagonal) {
  for (int n = 0; n <= 3; ++n) {
    std::vector<double> dev;
    for (int tw : {100, 200, 400, 800}) {
      const auto t = contraction_sum(h(tw), n, SignPattern::all_plus(h(tw)));
      ASSERT_EQ(t.terms.size(), std::size_t(tw + 1));
      EXPECT_DOUBLE_EQ(t.partial_sums.back(), t.total);
      EXPECT_NEAR(t.x[3], 12.0 / (tw + 1), 1e-15);
      dev.push_back(std::abs(t.total - 2.0));
    }
    for (std::size_t i = 1; i < dev.size(); ++i) {
      const double ratio = dev[i] / dev[i - 1];
      EXPECT_GT(ratio, 0.3) << n;
      EXPECT_LT(ratio, 0.7) << n;
    }
  }
}

TEST(ContractionSum, GuardAndAlternatingSigns) {
  EXPECT_THROW(contraction_sum(h(40), 3, SignPattern::all_plus(h(40))), PreconditionError);
  EXPECT_NO_THROW(contraction_sum(h(60), 3, SignPattern::all_plus(h(60))));
  for (int tw : {100, 200, 400}) {
    std::vector<int> signs(tw + 1);
    for (int l = 0; l <= tw; ++l) signs[l] = l % 2 ? -1 : 1;
    const auto eps = SignPattern::from_signs(h(tw), signs);
    for (int n = 0; n <= 2; ++n) EXPECT_GT(std::abs(diagonal_limit(h(tw), n, eps) - 2 * sgn(n)), 0.5);
  }
}

TEST(DiagonalLimit, AgreesWithPiEntryAndCouplingOrder) {
  EXPECT_LT(coupling_order_residual(), 1e-12);
  for (int tw : {1, 20, 41, 100}) {
    const auto eps = SignPattern::all_plus(h(tw));
    for (int n = 0; 10 * n <= h(tw).value(); ++n) {
      const double d = diagonal_limit(h(tw), n, eps);
      EXPECT_NEAR(d, pi_s_entry(h(tw), eps, h(tw) - HalfInt::from_int(n)), 1e-12);
      EXPECT_NEAR(d, sgn(n) * contraction_sum(h(tw), n, eps).total, 1e-12);
    }
  }
  EXPECT_NEAR(diagonal_limit(h(1), 0, SignPattern::all_plus(h(1))), 0.5 * (1 + std::sqrt(3.0)), 1e-15);
}

// Regression: odd n at large s used to pick up a wrong overall sign.
TEST(DiagonalLimit, LargeSpinSigns) {
  for (int n = 0; n <= 3; ++n) {
    const double d = diagonal_limit(h(1600), n, SignPattern::all_plus(h(1600)));
    EXPECT_NEAR(d, 2 * sgn(n), 0.01) << n;
  }
}

TEST(KernelBlock, ReducesToDiagonalAtOrigin) {
  const HalfInt s = h(200);
  const auto eps = SignPattern::all_plus(s);
  const ComplexMatrix B = contracted_kernel_block(s, 0.0, 5, eps);
  ASSERT_EQ(B.rows(), 6);
  for (int n = 0; n <= 5; ++n) EXPECT_NEAR(B(n, n).real(), diagonal_limit(s, n, eps), 1e-12);
  EXPECT_LT(max_abs(B - B.diagonal().asDiagonal().toDenseMatrix()), 1e-14);
  EXPECT_THROW(contracted_kernel_block(s, 0.0, 11, eps), PreconditionError);
}

TEST(KernelBlock, ConvergesForAllPlusOnly) {
  const Complex alpha(0.3, -0.2);
  double prev = 1e9;
  for (int tw : {100, 200, 400}) {
    const double dev = kernel_block_compare(h(tw), alpha, 3, SignPattern::all_plus(h(tw)));
    EXPECT_LT(dev, prev);
    prev = dev;
    const auto minus = SignPattern::from_signs(h(tw), [&] {
      std::vector<int> v(tw + 1, -1);
      v[0] = 1;
      return v;
    }());
    EXPECT_GT(kernel_block_compare(h(tw), alpha, 3, minus), 0.5);
  }
  EXPECT_LT(prev, 0.05);
}

TEST(EpsilonSweep, OnlyAllPlusConvergesForSmallBase) {
  const std::vector<HalfInt> ladder = {h(100), h(200), h(400)};
  for (int tw : {2, 4}) {
    const auto report = epsilon_sweep(ladder, {0, 1, 2}, sweep_patterns(h(tw)));
    ASSERT_EQ(report.entries.size(), std::size_t(1) << tw);
    EXPECT_EQ(report.converging_count(), 1);
    for (const auto& e : report.entries) {
      EXPECT_EQ(e.converges, e.base.is_all_plus()) << e.base.mask();
      ASSERT_EQ(e.distance.size(), 3u);
    }
  }
}

TEST(EpsilonSweep, PatternSelection) {
  EXPECT_EQ(sweep_patterns(h(8)).size(), 256u);
  const auto big = sweep_patterns(h(12), 5, 9);
  EXPECT_TRUE(big.front().is_all_plus());
  EXPECT_GE(big.size(), 1u + 12u);
  EXPECT_EQ(big, sweep_patterns(h(12), 5, 9));
  // single flips never converge
  std::vector<SignPattern> flips(big.begin() + 1, big.begin() + 13);
  const auto r = epsilon_sweep({h(100), h(200), h(400)}, {0, 1}, flips);
  EXPECT_EQ(r.converging_count(), 0);
}
