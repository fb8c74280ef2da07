#include <cmath>
#include <limits>
#include <vector>

#include "phasecontract/errors.hpp"
#include "phasecontract/log_domain.hpp"
#include "phasecontract/spin_operators.hpp"

namespace phasecontract {

int index_of_projection(HalfInt s, HalfInt m) {
  if (!is_projection_of(m, s)) throw DomainError("projection " + m.str() + " not valid for s = " + s.str());
  return (s - m).twice() / 2;
}

SpinMatrices spin_matrices(HalfInt s) {
  if (s.twice() < 0) throw DomainError("spin_matrices: s must be non-negative");
  const int dim = spin_dimension(s);
  const double sv = s.value();
  SpinMatrices out{ComplexMatrix::Zero(dim, dim), ComplexMatrix::Zero(dim, dim), ComplexMatrix::Zero(dim, dim)};
  for (int i = 0; i < dim; ++i) {
    const double m = projection_at(s, i).value();
    out.Sz(i, i) = m;
    // S+ |m> = sqrt(s(s+1) - m(m+1)) |m+1>, and |m+1> sits at index i-1.
    if (i > 0) out.Splus(i - 1, i) = std::sqrt(sv * (sv + 1.0) - m * (m + 1.0));
    if (i + 1 < dim) out.Sminus(i + 1, i) = std::sqrt(sv * (sv + 1.0) - m * (m - 1.0));
  }
  return out;
}

ComplexMatrix SpinMatrices::along(SpherePoint point) const {
  const Eigen::Vector3d n = point.unit_vector();
  return n.x() * Sx() + n.y() * Sy() + n.z() * Sz;
}

namespace {

constexpr double kMaxCancellation = 1e4;
constexpr int kMaxHalvings = 40;

// One element d^j_{m'm}(beta) from the closed form; all arguments doubled.
double small_d_element(int two_j, int two_mp, int two_m, double log_abs_c, int sign_c, double log_abs_s,
                       int sign_s, double& cancellation) {
  const int jpmp = (two_j + two_mp) / 2, jmmp = (two_j - two_mp) / 2;
  const int jpm = (two_j + two_m) / 2, jmm = (two_j - two_m) / 2;
  const int mp_minus_m = (two_mp - two_m) / 2;
  const double log_pre =
      0.5 * (log_factorial(jpmp) + log_factorial(jmmp) + log_factorial(jpm) + log_factorial(jmm));

  const int kmin = std::max(0, -mp_minus_m);
  const int kmax = std::min(jpm, jmmp);

  if (!std::isfinite(log_abs_c) || !std::isfinite(log_abs_s)) {
    // beta a multiple of pi: at most one term survives.
    LogDomainSum sum;
    for (int k = kmin; k <= kmax; ++k) {
      const int ec = two_j - 2 * k - mp_minus_m;
      const int es = 2 * k + mp_minus_m;
      if ((ec > 0 && !std::isfinite(log_abs_c)) || (es > 0 && !std::isfinite(log_abs_s))) continue;
      double log_term = log_pre - (log_factorial(jpm - k) + log_factorial(k) + log_factorial(jmmp - k) +
                                   log_factorial(k + mp_minus_m));
      if (ec > 0) log_term += ec * log_abs_c;
      if (es > 0) log_term += es * log_abs_s;
      int sign = ((k + mp_minus_m) % 2 == 0) ? 1 : -1;
      if (ec % 2 != 0) sign *= sign_c;
      if (es % 2 != 0) sign *= sign_s;
      sum.add(LogDomainReal::from_log(sign, log_term));
    }
    return sum.value().to_double();
  }

  // Logs of the terms relative to the first one, accumulated from the exact
  // term ratios; the large common logarithm is applied once at the end, so
  // its rounding does not multiply the cancellation between terms.
  const int ec0 = two_j - 2 * kmin - mp_minus_m, es0 = 2 * kmin + mp_minus_m;
  const double log_first = log_pre -
                           (log_factorial(jpm - kmin) + log_factorial(kmin) + log_factorial(jmmp - kmin) +
                            log_factorial(kmin + mp_minus_m)) +
                           ec0 * log_abs_c + es0 * log_abs_s;
  const double log_t2 = 2.0 * (log_abs_s - log_abs_c);
  thread_local std::vector<double> rel;
  thread_local std::vector<int> signs;
  rel.clear();
  signs.clear();
  double r = 0.0, peak = 0.0;
  for (int k = kmin; k <= kmax; ++k) {
    if (k > kmin) {
      const int j = k - 1;
      r += std::log(double(jpm - j) * double(jmmp - j)) - std::log(double(j + 1) * double(j + 1 + mp_minus_m)) + log_t2;
    }
    const int ec = two_j - 2 * k - mp_minus_m, es = 2 * k + mp_minus_m;
    int sign = ((k + mp_minus_m) % 2 == 0) ? 1 : -1;
    if (ec % 2 != 0) sign *= sign_c;
    if (es % 2 != 0) sign *= sign_s;
    rel.push_back(r);
    signs.push_back(sign);
    // Terms are unimodal in k; stop once far below the peak on the way down.
    if (r < peak - 45.0 && k > kmin && r < rel[rel.size() - 2]) break;
    peak = std::max(peak, r);
  }
  CompensatedSum sum;
  double total_abs = 0.0;
  for (std::size_t i = 0; i < rel.size(); ++i) {
    const double t = std::exp(rel[i] - peak);
    sum += signs[i] * t;
    total_abs += t;
  }
  const double v = sum.value();
  // An exact cancellation to zero is a structural zero, not lost digits.
  if (v != 0.0) cancellation = std::max(cancellation, total_abs / std::abs(v));
  if (v == 0.0) return 0.0;
  return (v < 0 ? -1.0 : 1.0) * std::exp(std::log(std::abs(v)) + log_first + peak);
}

RealMatrix small_d_rows(HalfInt s, double beta, int rows, double& cancellation) {
  const int dim = spin_dimension(s);
  const double c = std::cos(0.5 * beta), sn = std::sin(0.5 * beta);
  const double log_c = c == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(std::abs(c));
  const double log_s = sn == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(std::abs(sn));
  const int sign_c = c < 0 ? -1 : 1, sign_s = sn < 0 ? -1 : 1;
  RealMatrix d(rows, dim);
  for (int i = 0; i < rows; ++i) {
    const int two_mp = (s - HalfInt::from_int(i)).twice();
    for (int k = 0; k < dim; ++k) {
      const int two_m = (s - HalfInt::from_int(k)).twice();
      d(i, k) = small_d_element(s.twice(), two_mp, two_m, log_c, sign_c, log_s, sign_s, cancellation);
    }
  }
  return d;
}

RealMatrix small_d_halving(HalfInt s, double beta, int depth) {
  double cancellation = 1.0;
  RealMatrix d = small_d_rows(s, beta, spin_dimension(s), cancellation);
  if (cancellation <= kMaxCancellation || depth >= kMaxHalvings) return d;
  const RealMatrix half = small_d_halving(s, 0.5 * beta, depth + 1);
  return half * half;
}

}  // namespace

RealMatrix wigner_small_d(HalfInt s, double beta) {
  if (s.twice() < 0) throw DomainError("wigner_small_d: s must be non-negative");
  return small_d_halving(s, beta, 0);
}

RealMatrix wigner_small_d_top_rows(HalfInt s, double beta, int row_count) {
  if (row_count < 0 || row_count > spin_dimension(s))
    throw DomainError("wigner_small_d_top_rows: row_count out of range");
  double cancellation = 1.0;
  return small_d_rows(s, beta, row_count, cancellation);
}

ComplexMatrix rotation_matrix(HalfInt s, SpherePoint point) {
  const RealMatrix d = wigner_small_d(s, point.theta);
  const int dim = spin_dimension(s);
  ComplexMatrix u(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const double mp = projection_at(s, i).value();
    for (int k = 0; k < dim; ++k) {
      const double m = projection_at(s, k).value();
      u(i, k) = d(i, k) * std::exp(Complex(0.0, -(mp - m) * point.phi));
    }
  }
  return u;
}

Eigen::Matrix3d rotation_so3(SpherePoint point) {
  const Eigen::Vector3d axis(-std::sin(point.phi), std::cos(point.phi), 0.0);
  return Eigen::AngleAxisd(point.theta, axis).toRotationMatrix();
}

}  // namespace phasecontract
