#pragma once

#include <vector>

#include "phasecontract/linalg.hpp"

namespace phasecontract {

/// Fock space truncated to |0> .. |n_max>.
struct FockSpace {
  int n_max = 0;

  explicit FockSpace(int n_max_);
  int dimension() const { return n_max + 1; }
};

/// alpha = (q + i p)/sqrt(2), hbar = 1.
struct PhasePoint {
  Complex alpha{0.0, 0.0};

  static PhasePoint from_qp(double q, double p);
  double q() const { return std::sqrt(2.0) * alpha.real(); }
  double p() const { return std::sqrt(2.0) * alpha.imag(); }
};

struct FockOperators {
  ComplexMatrix a;
  ComplexMatrix adag;
  ComplexMatrix N;
};

FockOperators fock_operators(const FockSpace& space);

/// <m|T(alpha)|n> from the associated-Laguerre closed form. Every entry is
/// exact (no truncation of the operator itself); only products of truncated
/// matrices lose accuracy near n_max. Warns when 4|alpha|^2 > n_max/2.
ComplexMatrix displacement(const FockSpace& space, PhasePoint point);

/// diag((-1)^n).
ComplexMatrix parity(const FockSpace& space);

/// Delta(alpha) = 2 T(alpha) Pi T(alpha)^dagger restricted to |0> .. |n_max>.
/// The product is formed on a padded internal space large enough that the
/// returned block is converged. Warns like displacement().
ComplexMatrix particle_kernel(const FockSpace& space, PhasePoint point);

/// Internal dimension used by particle_kernel.
int particle_kernel_padding(const FockSpace& space, PhasePoint point);

/// 2 (-1)^n e^{-2|alpha|^2} L_n(4|alpha|^2).
double particle_kernel_diagonal(int n, PhasePoint point);

/// The diagonal of a kernel is a non-convergent alternating series; its
/// trace is taken as the Euler (binomial) mean of the partial sums, which
/// agrees with the Abel sum.
double euler_summed_trace(const ComplexMatrix& kernel);

/// W(alpha) = Re Tr[Delta(alpha) rho] at each point. Throws DomainError when
/// rho is not (n_max+1) x (n_max+1).
std::vector<double> wigner_function(const ComplexMatrix& rho, const FockSpace& space,
                                    const std::vector<PhasePoint>& points);

/// Row-major grid: q index outer, p index inner.
std::vector<PhasePoint> phase_grid(double q_min, double q_max, int n_q, double p_min, double p_max, int n_p);

/// (1/pi) Int dx psi*(q+x) psi(q-x) e^{2ipx} for psi = sum_n c_n |n> in the
/// position representation (Hermite functions). Adaptive Gauss-Kronrod;
/// throws ConvergenceError when the error estimate exceeds 1e-10.
double wigner_integral(const ComplexVector& psi, double q, double p);

/// wigner_integral scaled by h = 2 pi onto the kernel normalization, so that
/// it equals Tr[Delta(alpha) |psi><psi|] at alpha = (q + i p)/sqrt(2).
double wigner_integral_check(const ComplexVector& psi, double q, double p);

}  // namespace phasecontract
