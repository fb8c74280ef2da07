#pragma once

#include <Eigen/Dense>
#include <complex>

namespace phasecontract {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;

inline ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

inline double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline double hermiticity_residual(const ComplexMatrix& m) { return max_abs(m - m.adjoint()); }

inline double unitarity_residual(const ComplexMatrix& u) {
  return max_abs(u * u.adjoint() - ComplexMatrix::Identity(u.rows(), u.cols()));
}

}  // namespace phasecontract
