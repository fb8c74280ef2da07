#pragma once

#include "phasecontract/half_int.hpp"
#include "phasecontract/linalg.hpp"
#include "phasecontract/special_functions.hpp"

namespace phasecontract {

// Basis convention for every spin-s matrix in this library: row/column index
// i = 0 .. 2s labels |s, m> with m = s - i, so S^z = diag(s, s-1, ..., -s).
// Under the contraction |s, s-n> -> |n>, index i is the Fock index n.

inline int spin_dimension(HalfInt s) { return s.twice() + 1; }
inline HalfInt projection_at(HalfInt s, int index) { return s - HalfInt::from_int(index); }
int index_of_projection(HalfInt s, HalfInt m);  // throws DomainError when |m| > s

struct SpinMatrices {
  ComplexMatrix Sz;
  ComplexMatrix Splus;
  ComplexMatrix Sminus;

  ComplexMatrix Sx() const { return 0.5 * (Splus + Sminus); }
  ComplexMatrix Sy() const { return Complex(0.0, -0.5) * (Splus - Sminus); }
  /// n . S for the unit vector of `point`.
  ComplexMatrix along(SpherePoint point) const;
};

SpinMatrices spin_matrices(HalfInt s);

/// Wigner small-d matrix d^s_{m'm}(beta) = <s m'| exp(-i beta S^y) |s m>.
/// Closed-form factorial sum in the log domain; when cancellation inside an
/// element's sum exceeds four digits the angle is halved and the result is
/// squared, recursively.
RealMatrix wigner_small_d(HalfInt s, double beta);

/// Rows 0 .. row_count-1 (m' = s, s-1, ...) of d^s(beta). The sums for these
/// rows have at most row_count terms.
RealMatrix wigner_small_d_top_rows(HalfInt s, double beta, int row_count);

/// U(n) = exp(-i theta k.S) with k = (-sin phi, cos phi, 0): maps S^z to n.S.
/// Entries e^{-i(m'-m) phi} d^s_{m'm}(theta). Any real theta is accepted; the
/// closed form needs no range reduction.
ComplexMatrix rotation_matrix(HalfInt s, SpherePoint point);

/// SO(3) image of rotation_matrix(point): rotation about k by theta.
Eigen::Matrix3d rotation_so3(SpherePoint point);

}  // namespace phasecontract
