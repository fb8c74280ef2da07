#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "phasecontract/half_int.hpp"
#include "phasecontract/linalg.hpp"
#include "phasecontract/sphere_grid.hpp"
#include "phasecontract/special_functions.hpp"

namespace phasecontract {

/// The signs eps_0 .. eps_2s selecting one of the 2^(2s) spin kernels.
/// eps_0 = +1 always.
class SignPattern {
 public:
  static SignPattern all_plus(HalfInt s);
  /// `signs` has length 2s + 1, entries +-1, signs[0] == +1.
  static SignPattern from_signs(HalfInt s, std::vector<int> signs);
  /// Bitstring of length 2s; character l-1 is '1' when eps_l = -1.
  static SignPattern from_mask(HalfInt s, std::string_view mask);
  /// Bit l-1 of `bits` set when eps_l = -1. Requires 2s <= 63.
  static SignPattern from_bits(HalfInt s, std::uint64_t bits);

  HalfInt s() const { return s_; }
  int operator[](int l) const { return signs_.at(l); }
  const std::vector<int>& signs() const { return signs_; }
  std::string mask() const;
  bool is_all_plus() const;

  /// Continues the free signs periodically to spin `target`:
  /// eps'_l = eps_{((l-1) mod 2s) + 1} for l >= 1. A pattern with no free
  /// signs (s = 0) continues as all-plus.
  SignPattern periodic_extension(HalfInt target) const;

  bool operator==(const SignPattern&) const = default;

 private:
  HalfInt s_;
  std::vector<int> signs_;
};

/// Every pattern of spin s, ordered by from_bits(0), from_bits(1), ...
/// Throws DomainError for 2s > 20.
std::vector<SignPattern> all_sign_patterns(HalfInt s);

struct SpinKernel {
  HalfInt s;
  SignPattern epsilon;
  SpherePoint point;
  ComplexMatrix matrix;  // (2s+1) x (2s+1), basis index i <-> m = s - i
};

/// Precomputed Clebsch-Gordan tables for one (s, eps). Immutable after
/// construction; all members are safe to call concurrently.
class SpinKernelFamily {
 public:
  SpinKernelFamily(HalfInt s, SignPattern epsilon);

  HalfInt s() const { return s_; }
  const SignPattern& epsilon() const { return epsilon_; }
  int dimension() const { return s_.twice() + 1; }

  /// Z^eps_{m m'}(n): coefficient of |s,m><s,m'| in the kernel.
  Complex coefficient(HalfInt m, HalfInt mprime, SpherePoint point) const;

  /// Kernel assembled from the multipole expansion, sum over l ascending.
  SpinKernel at(SpherePoint point) const;

  /// Diagonal kernel at the north pole, entries Delta_eps(m) of the
  /// m-diagonal Clebsch-Gordan sum.
  ComplexMatrix pi_s() const;
  const std::vector<double>& pi_s_diagonal() const { return pi_diag_; }

  /// U(n) pi_s U(n)^dagger.
  SpinKernel via_rotation(SpherePoint point) const;

 private:
  HalfInt s_;
  SignPattern epsilon_;
  // table_[l](i, j) = sqrt(4 pi)/(2s+1) eps_l sqrt(2l+1) <s m_i; l m_j - m_i | s m_j>
  std::vector<RealMatrix> table_;
  std::vector<double> pi_diag_;
};

/// Delta_eps(m) = sum_l eps_l (2l+1)/(2s+1) <s m; l 0 | s m>.
double pi_s_entry(HalfInt s, const SignPattern& epsilon, HalfInt m);

Complex kernel_coefficient(HalfInt s, const SignPattern& epsilon, HalfInt m, HalfInt mprime, SpherePoint point);
SpinKernel kernel_at(HalfInt s, const SignPattern& epsilon, SpherePoint point);
ComplexMatrix pi_s(HalfInt s, const SignPattern& epsilon);
SpinKernel kernel_via_rotation(HalfInt s, const SignPattern& epsilon, SpherePoint point);

/// W_A(n) = Tr[Delta_eps(n) A]. Throws DomainError on a dimension mismatch.
Complex wigner_symbol(const ComplexMatrix& A, const SpinKernelFamily& family, SpherePoint point);
Complex wigner_symbol(const ComplexMatrix& A, HalfInt s, const SignPattern& epsilon, SpherePoint point);

/// W_A at every grid point, in grid index order.
std::vector<Complex> sample_symbol(const ComplexMatrix& A, const SpinKernelFamily& family, const SphereGrid& grid);

/// A = (2s+1)/(4 pi) sum_i w_i W(n_i) Delta_eps(n_i). Throws PreconditionError
/// when the grid bandlimit is below 4s.
ComplexMatrix reconstruct_operator(const std::vector<Complex>& samples, const SphereGrid& grid,
                                   const SpinKernelFamily& family);
ComplexMatrix reconstruct_operator(const std::vector<Complex>& samples, const SphereGrid& grid, HalfInt s,
                                   const SignPattern& epsilon);

struct AuditReport {
  HalfInt s;
  std::string epsilon_mask;
  bool negative_control = false;
  int trials = 0;
  std::uint64_t seed = 0;
  double hermiticity = 0.0;    // max |D - D^dagger|
  double normalization = 0.0;  // max |Tr D - 1|
  double covariance = 0.0;     // max |U D(n) U^dagger - D(R n)|
  double roundtrip = 0.0;      // max |A_reconstructed - A|
  bool pass = false;

  static constexpr double kTolerance = 1e-9;
  std::string to_text() const;
};

struct AuditOptions {
  int trials = 8;
  std::uint64_t seed = 1;
  /// Replaces pi_s by the rotation by pi about z, diag((-1)^(s-m)), which is
  /// not a valid correspondence; the audit must then fail.
  bool negative_control = false;
};

/// Checks the kernel postulates: Hermiticity, unit trace, covariance under
/// rotations and the symbol -> operator roundtrip on `grid`.
AuditReport audit_postulates(HalfInt s, const SignPattern& epsilon, const SphereGrid& grid,
                             const AuditOptions& options = {});

}  // namespace phasecontract
