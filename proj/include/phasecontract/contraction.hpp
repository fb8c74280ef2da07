#pragma once

#include <cstdint>
#include <vector>

#include "phasecontract/half_int.hpp"
#include "phasecontract/linalg.hpp"
#include "phasecontract/particle_kernel.hpp"
#include "phasecontract/spin_kernel.hpp"

namespace phasecontract {

/// c = 1/sqrt(2s), so that 2 c^2 s = 1.
struct ContractionScale {
  HalfInt s;
  double c = 0.0;

  static ContractionScale for_spin(HalfInt s);  // throws DomainError for s <= 0
};

struct ContractedOperators {
  ComplexMatrix Aplus;   // c S^-, becomes a^dagger
  ComplexMatrix Aminus;  // c S^+, becomes a
  ComplexMatrix Az;      // -S^z + 1/(2c^2), becomes N
};

ContractedOperators contracted_operators(HalfInt s, const ContractionScale& scale);

/// U(n) at theta = 2c|alpha|, phi = arg(alpha): the finite-s stand-in for
/// T(alpha). Warns when theta > pi.
ComplexMatrix contracted_rotation(HalfInt s, Complex alpha);

/// sqrt((2l+1)/(2s+1)) <s, s-n; s, n-s | l 0>.
double term_delta(HalfInt s, int l, int n);

struct TermTable {
  HalfInt s;
  int n = 0;
  std::vector<double> x;             // x_l = l(l+1)/(2s+1)
  std::vector<double> terms;         // eps_l Delta^s_{l,n}, l = 0 .. 2s
  std::vector<double> partial_sums;  // compensated running sums
  double total = 0.0;
};

/// S(s, n, eps) = sum_l eps_l Delta^s_{l,n}, ascending l. Throws
/// PreconditionError unless n <= s/10.
TermTable contraction_sum(HalfInt s, int n, const SignPattern& epsilon);

/// Lambda_0 .. Lambda_{n_max} at x from
/// (n+1) L_{n+1} + (2n+1) L_n + n L_{n-1} = x L_n, Lambda_0 = 1.
std::vector<double> lambda_recursion(int n_max, double x);

/// Int_0^inf L_n(x) e^{-x/t} dx by adaptive Gauss-Kronrod. Throws
/// DomainError for t <= 0, ConvergenceError when the estimate is poor.
double laguerre_integral(int n, double t);

/// sum_l dx_l L_n(x_l) e^{-x_l/2}, dx_l = (2l+1)/(2s+1), l = 0 .. 2s.
double laguerre_riemann_sum(HalfInt s, int n);

/// Delta_eps(s-n), the pi_s diagonal entry at m = s - n. Same guard as
/// contraction_sum. The comparison target for the particle is 2(-1)^n.
double diagonal_limit(HalfInt s, int n, const SignPattern& epsilon);

/// Largest difference between Delta_eps(s-n) computed from <s m; l 0|s m>
/// and (-1)^n S(s, n, eps) computed from <s,s-n; s,n-s|l 0>, over s <= 5,
/// every n, and a few sign patterns. Both sides use the float Racah sum.
double coupling_order_residual();

/// Rows/columns 0 .. block of U pi_s U^dagger, U = contracted_rotation(s,
/// alpha), in Fock ordering n = s - m. Throws PreconditionError unless
/// block <= s/10.
ComplexMatrix contracted_kernel_block(HalfInt s, Complex alpha, int block, const SignPattern& epsilon);

/// Max-abs deviation of contracted_kernel_block from the particle kernel on
/// the same block.
double kernel_block_compare(HalfInt s, Complex alpha, int block, const SignPattern& epsilon);

struct SweepEntry {
  SignPattern base;                         // pattern before periodic extension
  std::vector<std::vector<double>> distance;  // [s index][n index] |Delta(s-n) - 2(-1)^n|
  bool converges = false;
};

struct SweepReport {
  std::vector<HalfInt> s_list;
  std::vector<int> n_list;
  std::vector<SweepEntry> entries;
  static constexpr double kFinalTolerance = 0.05;

  int converging_count() const;
};

/// A pattern CONVERGES when, for every n, the distance strictly decreases
/// along s_list and the distance at the last s is below 0.05. Each base
/// pattern is extended periodically to every s in the ladder.
SweepReport epsilon_sweep(const std::vector<HalfInt>& s_list, const std::vector<int>& n_list,
                          const std::vector<SignPattern>& patterns);

/// Exhaustive for 2s <= 8. Above that: all-plus, every single flip, and
/// `random_count` seeded random patterns.
std::vector<SignPattern> sweep_patterns(HalfInt base_s, int random_count = 16, std::uint64_t seed = 1);

}  // namespace phasecontract
