#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "phasecontract/clebsch_gordan.hpp"
#include "phasecontract/errors.hpp"
#include "phasecontract/linalg.hpp"
#include "phasecontract/spin_kernel.hpp"
#include "phasecontract/spin_operators.hpp"
#include "phasecontract/sphere_grid.hpp"

using namespace phasecontract;

namespace {

HalfInt h(int twice) { return HalfInt::from_twice(twice); }

// Delta_eps(m) from exact Clebsch-Gordan values, coupling s (x) s -> l.
double pi_entry_oracle(HalfInt s, const SignPattern& eps, HalfInt m) {
  double sum = 0.0;
  for (int l = 0; l <= s.twice(); ++l) {
    const double cg = clebsch_gordan(s, m, s, -m, HalfInt::from_int(l), HalfInt()).to_double();
    sum += eps[l] * std::sqrt((2.0 * l + 1) / (s.twice() + 1.0)) * cg;
  }
  return ((s - m).to_int() % 2 ? -1.0 : 1.0) * sum;
}

ComplexMatrix random_hermitian(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = Complex(g(rng), g(rng));
  return 0.5 * (a + a.adjoint());
}

const std::vector<SpherePoint> kPoints = {{0.0, 0.0}, {0.4, 0.2}, {1.3, 2.7}, {2.5, 5.9}, {std::numbers::pi, 0.0}};

}  // namespace

TEST(SignPattern, MaskRoundTripAndValidation) {
  const auto p = SignPattern::from_mask(h(4), "0110");
  EXPECT_EQ(p.mask(), "0110");
  EXPECT_EQ(p[0], 1);
  EXPECT_EQ(p[2], -1);
  EXPECT_EQ(p[4], 1);
  EXPECT_EQ(p, SignPattern::from_bits(h(4), 0b0110));
  EXPECT_EQ(p, SignPattern::from_signs(h(4), {1, 1, -1, -1, 1}));
  EXPECT_TRUE(SignPattern::all_plus(h(4)).is_all_plus());
  EXPECT_THROW(SignPattern::from_mask(h(4), "011"), DomainError);
  EXPECT_THROW(SignPattern::from_mask(h(4), "01a0"), DomainError);
  EXPECT_THROW(SignPattern::from_signs(h(2), {-1, 1, 1}), DomainError);
  EXPECT_THROW(SignPattern::from_signs(h(2), {1, 2, 1}), DomainError);
}

TEST(SignPattern, PeriodicExtension) {
  const auto p = SignPattern::from_mask(h(4), "0100").periodic_extension(h(12));
  EXPECT_EQ(p.mask(), "010001000100");
  EXPECT_TRUE(SignPattern::all_plus(HalfInt()).periodic_extension(h(6)).is_all_plus());
}

TEST(SignPattern, Enumeration) {
  const auto all = all_sign_patterns(h(3));
  ASSERT_EQ(all.size(), 8u);
  EXPECT_TRUE(all[0].is_all_plus());
  EXPECT_EQ(all[5].mask(), "101");
  EXPECT_THROW(all_sign_patterns(h(21)), DomainError);
}

TEST(SpinKernel, PiDiagonalMatchesExactOracle) {
  for (int tw = 0; tw <= 8; ++tw)
    for (const auto& eps : all_sign_patterns(h(tw))) {
      const SpinKernelFamily fam(h(tw), eps);
      for (int i = 0; i <= tw; ++i) {
        const HalfInt m = projection_at(h(tw), i);
        const double want = pi_entry_oracle(h(tw), eps, m);
        EXPECT_NEAR(pi_s_entry(h(tw), eps, m), want, 1e-13);
        EXPECT_NEAR(fam.pi_s_diagonal()[i], want, 1e-13);
      }
    }
}

TEST(SpinKernel, SpinHalfClosedForm) {
  const auto S = spin_matrices(h(1));
  const ComplexMatrix I = ComplexMatrix::Identity(2, 2);
  for (int sign : {1, -1}) {
    const auto eps = SignPattern::from_signs(h(1), {1, sign});
    for (const auto& p : kPoints) {
      const ComplexMatrix want = 0.5 * I + sign * std::sqrt(3.0) * S.along(p);
      EXPECT_LT(max_abs(kernel_at(h(1), eps, p).matrix - want), 1e-14);
    }
  }
}

TEST(SpinKernel, HermitianUnitTraceAndPoleValue) {
  for (int tw : {1, 2, 5, 10}) {
    std::mt19937_64 rng(tw);
    for (int trial = 0; trial < 3; ++trial) {
      const auto eps = SignPattern::from_bits(h(tw), rng() & ((1u << tw) - 1));
      const SpinKernelFamily fam(h(tw), eps);
      EXPECT_LT(max_abs(fam.at(SpherePoint::north_pole()).matrix - fam.pi_s()), 1e-13);
      for (const auto& p : kPoints) {
        const ComplexMatrix D = fam.at(p).matrix;
        EXPECT_LT(hermiticity_residual(D), 1e-13);
        EXPECT_NEAR(std::abs(D.trace() - 1.0), 0.0, 1e-13);
      }
    }
  }
}

// Multipole expansion and U pi_s U^dagger are independent constructions.
TEST(SpinKernel, MultipoleEqualsRotatedPi) {
  for (int tw : {1, 3, 6, 13, 24}) {
    const auto eps = (tw >= 3 && tw <= 6) ? SignPattern::from_bits(h(tw), 0b101) : SignPattern::all_plus(h(tw));
    const SpinKernelFamily fam(h(tw), eps);
    for (const auto& p : kPoints) {
      EXPECT_LT(max_abs(fam.at(p).matrix - fam.via_rotation(p).matrix), 1e-12) << tw;
      EXPECT_NEAR(std::abs(fam.coefficient(projection_at(h(tw), 0), projection_at(h(tw), 1), p) -
                           fam.at(p).matrix(0, 1)),
                  0.0, 1e-14);
    }
  }
}

TEST(SpinKernel, SymbolsOfBasicOperators) {
  const HalfInt s = h(5);
  const auto S = spin_matrices(s);
  const double j = s.value();
  for (int sign : {1, -1}) {
    const auto eps = SignPattern::from_signs(s, {1, sign, 1, -1, 1, 1});
    const SpinKernelFamily fam(s, eps);
    for (const auto& p : kPoints) {
      const ComplexMatrix I = ComplexMatrix::Identity(6, 6);
      EXPECT_NEAR(std::abs(wigner_symbol(I, fam, p) - 1.0), 0.0, 1e-13);
      const Complex wz = wigner_symbol(S.Sz, fam, p);
      EXPECT_NEAR(std::abs(wz - sign * std::sqrt(j * (j + 1)) * std::cos(p.theta)), 0.0, 1e-12);
    }
  }
}

TEST(SpinKernel, SymbolIsLinearAndRealForHermitian) {
  std::mt19937_64 rng(7);
  const HalfInt s = h(4);
  const SpinKernelFamily fam(s, SignPattern::from_mask(s, "0010"));
  const ComplexMatrix A = random_hermitian(5, rng), B = random_hermitian(5, rng);
  const Complex c(0.3, -1.2);
  for (const auto& p : kPoints) {
    const Complex lhs = wigner_symbol(A + c * B, fam, p);
    EXPECT_NEAR(std::abs(lhs - wigner_symbol(A, fam, p) - c * wigner_symbol(B, fam, p)), 0.0, 1e-12);
    EXPECT_NEAR(wigner_symbol(A, fam, p).imag(), 0.0, 1e-13);
  }
  EXPECT_THROW(wigner_symbol(ComplexMatrix::Identity(4, 4), fam, {}), DomainError);
}

TEST(SpinKernel, RoundTripThroughGrid) {
  std::mt19937_64 rng(3);
  for (int tw : {1, 4, 7}) {
    const HalfInt s = h(tw);
    const auto grid = SphereGrid::for_spin(s);
    const auto eps = SignPattern::from_bits(s, 1);
    const SpinKernelFamily fam(s, eps);
    ComplexMatrix A = random_hermitian(tw + 1, rng);
    A(0, tw) += Complex(0.5, 0.25);  // non-Hermitian part too
    const auto samples = sample_symbol(A, fam, grid);
    ASSERT_EQ(samples.size(), grid.size());
    EXPECT_LT(max_abs(reconstruct_operator(samples, grid, fam) - A), 1e-12);
  }
}

TEST(SpinKernel, CoarseGridIsRejected) {
  const HalfInt s = h(4);
  const auto grid = SphereGrid::gauss_legendre(3, 5);
  const SpinKernelFamily fam(s, SignPattern::all_plus(s));
  const auto samples = sample_symbol(ComplexMatrix::Identity(5, 5), fam, grid);
  EXPECT_THROW(reconstruct_operator(samples, grid, fam), PreconditionError);
  EXPECT_THROW(reconstruct_operator(std::vector<Complex>(3), SphereGrid::for_spin(s), fam), DomainError);
}

TEST(Audit, PassesForEveryPatternOfSmallSpin) {
  for (int tw = 1; tw <= 4; ++tw)
    for (const auto& eps : all_sign_patterns(h(tw))) {
      const auto r = audit_postulates(h(tw), eps, SphereGrid::for_spin(h(tw)), {4, 11, false});
      EXPECT_TRUE(r.pass) << r.to_text();
      EXPECT_LT(r.roundtrip, 1e-12);
    }
}

TEST(Audit, NegativeControlFails) {
  for (int tw : {1, 2, 5}) {
    const auto r = audit_postulates(h(tw), SignPattern::all_plus(h(tw)), SphereGrid::for_spin(h(tw)), {4, 1, true});
    EXPECT_FALSE(r.pass) << r.to_text();
    EXPECT_GT(r.roundtrip, 0.1);
  }
}

TEST(Audit, DeterministicForFixedSeed) {
  const HalfInt s = h(6);
  const auto eps = SignPattern::from_mask(s, "100001");
  const auto grid = SphereGrid::for_spin(s);
  const auto a = audit_postulates(s, eps, grid, {5, 42, false});
  const auto b = audit_postulates(s, eps, grid, {5, 42, false});
  EXPECT_EQ(a.to_text(), b.to_text());
  EXPECT_NE(a.to_text().find("result = PASS"), std::string::npos);
}

TEST(Audit, CoarseGridFailsRoundTrip) {
  const HalfInt s = h(4);
  EXPECT_THROW(audit_postulates(s, SignPattern::all_plus(s), SphereGrid::gauss_legendre(3, 5)), PreconditionError);
}

TEST(SpinKernel, CovariantUnderRotations) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int tw : {1, 4, 9}) {
    const HalfInt s = h(tw);
    const SpinKernelFamily fam(s, SignPattern::from_bits(s, rng() & ((1u << tw) - 1)));
    for (int trial = 0; trial < 4; ++trial) {
      const SpherePoint r{std::acos(2 * u(rng) - 1), 2 * std::numbers::pi * u(rng)};
      const SpherePoint n{std::acos(2 * u(rng) - 1), 2 * std::numbers::pi * u(rng)};
      const ComplexMatrix U = rotation_matrix(s, r);
      const SpherePoint rn = SpherePoint::from_vector(rotation_so3(r) * n.unit_vector());
      EXPECT_LT(max_abs(U * fam.at(n).matrix * U.adjoint() - fam.at(rn).matrix), 1e-12);
    }
  }
}
