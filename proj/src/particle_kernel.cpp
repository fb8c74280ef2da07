#include "phasecontract/particle_kernel.hpp"

#include <fmt/format.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "phasecontract/diagnostics.hpp"
#include "phasecontract/errors.hpp"
#include "phasecontract/log_domain.hpp"
#include "phasecontract/parallel.hpp"
#include "phasecontract/special_functions.hpp"

namespace phasecontract {

FockSpace::FockSpace(int n_max_) : n_max(n_max_) {
  if (n_max < 0) throw DomainError(fmt::format("FockSpace: n_max must be non-negative, got {}", n_max));
}

PhasePoint PhasePoint::from_qp(double q, double p) { return {Complex(q, p) / std::sqrt(2.0)}; }

FockOperators fock_operators(const FockSpace& space) {
  const int dim = space.dimension();
  FockOperators ops{ComplexMatrix::Zero(dim, dim), ComplexMatrix::Zero(dim, dim), ComplexMatrix::Zero(dim, dim)};
  for (int n = 1; n < dim; ++n) ops.a(n - 1, n) = std::sqrt(static_cast<double>(n));
  ops.adag = ops.a.adjoint();
  for (int n = 0; n < dim; ++n) ops.N(n, n) = n;
  return ops;
}

namespace {

void check_truncation(const FockSpace& space, PhasePoint point, const char* where) {
  const double x = std::norm(point.alpha);
  if (4.0 * x > 0.5 * space.n_max)
    warn(fmt::format("{}: |alpha|^2 = {:.6g} is large for n_max = {}; entries near the truncation edge are unreliable",
                     where, x, space.n_max));
}

// Closed form on dimension `dim`, one recurrence per diagonal k = m - n:
// g_n = sqrt(n!/(n+k)!) |alpha|^k e^{-x/2} L_n^(k)(x), x = |alpha|^2,
// (n+1)L_{n+1} = (2n+k+1-x) L_n - (n+k) L_{n-1} rescaled to g.
ComplexMatrix displacement_matrix(int dim, Complex alpha) {
  ComplexMatrix t = ComplexMatrix::Zero(dim, dim);
  const double r = std::abs(alpha), x = r * r, phi = std::arg(alpha);
  for (int k = 0; k < dim; ++k) {
    double g0;
    if (r == 0.0)
      g0 = k == 0 ? 1.0 : 0.0;
    else
      g0 = std::exp(k * std::log(r) - 0.5 * x - 0.5 * log_factorial(k));
    if (g0 == 0.0) continue;
    const Complex below = std::polar(1.0, k * phi);
    const Complex above = (k % 2 ? -1.0 : 1.0) * std::conj(below);
    double prev = 0.0, cur = g0;
    for (int n = 0; n + k < dim; ++n) {
      t(n + k, n) = cur * below;
      if (k > 0) t(n, n + k) = cur * above;
      const double next = ((2.0 * n + k + 1.0 - x) * cur - std::sqrt(static_cast<double>(n) * (n + k)) * prev) /
                          std::sqrt((n + 1.0) * (n + k + 1.0));
      prev = cur;
      cur = next;
    }
  }
  return t;
}

}  // namespace

ComplexMatrix displacement(const FockSpace& space, PhasePoint point) {
  check_truncation(space, point, "displacement");
  return displacement_matrix(space.dimension(), point.alpha);
}

ComplexMatrix parity(const FockSpace& space) {
  ComplexMatrix p = ComplexMatrix::Zero(space.dimension(), space.dimension());
  for (int n = 0; n < space.dimension(); ++n) p(n, n) = n % 2 ? -1.0 : 1.0;
  return p;
}

int particle_kernel_padding(const FockSpace& space, PhasePoint point) {
  // displaced |n> spreads over ~ |alpha|^2 +- |alpha| sqrt(2n+1) levels
  const double r = std::abs(point.alpha);
  const double extra = 2.0 * r * r + 12.0 * r * std::sqrt(2.0 * space.n_max + 2.0) + 40.0;
  return space.dimension() + static_cast<int>(std::ceil(extra));
}

ComplexMatrix particle_kernel(const FockSpace& space, PhasePoint point) {
  check_truncation(space, point, "particle_kernel");
  const int dim = space.dimension();
  if (point.alpha == Complex(0.0, 0.0)) return 2.0 * parity(space);
  const int padded = particle_kernel_padding(space, point);
  const ComplexMatrix t = displacement_matrix(padded, point.alpha);
  ComplexMatrix rows = t.topRows(dim);
  ComplexMatrix signed_rows = rows;
  for (int k = 1; k < padded; k += 2) signed_rows.col(k) *= -1.0;
  return 2.0 * signed_rows * rows.adjoint();
}

double particle_kernel_diagonal(int n, PhasePoint point) {
  if (n < 0) throw DomainError("particle_kernel_diagonal: n must be non-negative");
  const double x = std::norm(point.alpha);
  return 2.0 * (n % 2 ? -1.0 : 1.0) * std::exp(-2.0 * x) * laguerre(n, 4.0 * x);
}

double euler_summed_trace(const ComplexMatrix& kernel) {
  const Eigen::Index n = std::min(kernel.rows(), kernel.cols());
  if (n == 0) return 0.0;
  std::vector<double> v(n);
  double partial = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) v[i] = partial += kernel(i, i).real();
  for (Eigen::Index len = n - 1; len > 0; --len)
    for (Eigen::Index j = 0; j < len; ++j) v[j] = 0.5 * (v[j] + v[j + 1]);
  return v[0];
}

std::vector<double> wigner_function(const ComplexMatrix& rho, const FockSpace& space,
                                    const std::vector<PhasePoint>& points) {
  if (rho.rows() != space.dimension() || rho.cols() != space.dimension())
    throw DomainError(fmt::format("wigner_function: rho is {}x{}, expected {}x{}", rho.rows(), rho.cols(),
                                  space.dimension(), space.dimension()));
  for (const auto& pt : points) check_truncation(space, pt, "wigner_function");
  std::vector<double> w(points.size());
  // warnings already issued above; the kernel call below would repeat them
  auto quiet = set_warning_handler([](std::string_view) {});
  try {
    parallel_for(points.size(), [&](std::size_t i) {
      const ComplexMatrix d = particle_kernel(space, points[i]);
      w[i] = d.cwiseProduct(rho.transpose()).sum().real();
    });
  } catch (...) {
    set_warning_handler(quiet);
    throw;
  }
  set_warning_handler(quiet);
  return w;
}

std::vector<PhasePoint> phase_grid(double q_min, double q_max, int n_q, double p_min, double p_max, int n_p) {
  if (n_q < 1 || n_p < 1) throw DomainError("phase_grid: grid sizes must be positive");
  auto node = [](double lo, double hi, int n, int i) { return n == 1 ? lo : lo + (hi - lo) * i / (n - 1); };
  std::vector<PhasePoint> pts;
  pts.reserve(static_cast<std::size_t>(n_q) * n_p);
  for (int i = 0; i < n_q; ++i)
    for (int j = 0; j < n_p; ++j) pts.push_back(PhasePoint::from_qp(node(q_min, q_max, n_q, i), node(p_min, p_max, n_p, j)));
  return pts;
}

namespace {

Complex position_wavefunction(const ComplexVector& psi, double x) {
  // normalized Hermite recurrence, all orders at once
  const double h0 = std::exp(-0.5 * x * x) / std::pow(std::numbers::pi, 0.25);
  Complex sum = psi.size() > 0 ? psi(0) * h0 : 0.0;
  double prev = 0.0, cur = h0;
  for (Eigen::Index n = 1; n < psi.size(); ++n) {
    const double next = std::sqrt(2.0 / n) * x * cur - std::sqrt((n - 1.0) / n) * prev;
    prev = cur;
    cur = next;
    sum += psi(n) * cur;
  }
  return sum;
}

}  // namespace

double wigner_integral(const ComplexVector& psi, double q, double p) {
  if (psi.size() == 0) throw DomainError("wigner_integral: empty state");
  const double reach = std::abs(q) + std::sqrt(2.0 * psi.size() + 1.0) + 10.0;
  auto integrand = [&](double x) {
    const Complex v = std::conj(position_wavefunction(psi, q + x)) * position_wavefunction(psi, q - x) *
                      std::polar(1.0, 2.0 * p * x);
    return v.real();
  };
  double error = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, -reach, reach, 15, 1e-14, &error);
  if (!(error <= 1e-10 * std::max(1.0, std::abs(value))))
    throw ConvergenceError(fmt::format("wigner_integral: quadrature error estimate {:.3g} at q = {}, p = {}", error, q, p));
  return value / std::numbers::pi;
}

double wigner_integral_check(const ComplexVector& psi, double q, double p) {
  return 2.0 * std::numbers::pi * wigner_integral(psi, q, p);
}

}  // namespace phasecontract
