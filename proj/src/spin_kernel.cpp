#include "phasecontract/spin_kernel.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "phasecontract/clebsch_gordan.hpp"
#include "phasecontract/errors.hpp"
#include "phasecontract/log_domain.hpp"
#include "phasecontract/parallel.hpp"
#include "phasecontract/spin_operators.hpp"

namespace phasecontract {

namespace {

void require_spin(HalfInt s, const char* where) {
  if (s.twice() < 0) throw DomainError(fmt::format("{}: spin must be non-negative, got {}", where, s.str()));
}

void require_pattern(HalfInt s, const SignPattern& eps, const char* where) {
  if (eps.s() != s)
    throw DomainError(fmt::format("{}: sign pattern is for s = {}, kernel for s = {}", where, eps.s().str(), s.str()));
}

// Y_{l,q}(n) for 0 <= l <= lmax, -l <= q <= l, stored at [l][q + lmax].
std::vector<std::vector<Complex>> harmonic_table(int lmax, SpherePoint p) {
  std::vector<std::vector<Complex>> y(lmax + 1, std::vector<Complex>(2 * lmax + 1));
  for (int l = 0; l <= lmax; ++l)
    for (int q = 0; q <= l; ++q) {
      const Complex v = spherical_harmonic(l, q, p);
      y[l][q + lmax] = v;
      y[l][-q + lmax] = (q % 2 ? -1.0 : 1.0) * std::conj(v);
    }
  return y;
}

ComplexMatrix diagonal_matrix(const std::vector<double>& d) {
  ComplexMatrix m = ComplexMatrix::Zero(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

}  // namespace

// ---- SignPattern ----

SignPattern SignPattern::all_plus(HalfInt s) {
  require_spin(s, "SignPattern");
  SignPattern p;
  p.s_ = s;
  p.signs_.assign(s.twice() + 1, 1);
  return p;
}

SignPattern SignPattern::from_signs(HalfInt s, std::vector<int> signs) {
  require_spin(s, "SignPattern");
  if (signs.size() != static_cast<std::size_t>(s.twice() + 1))
    throw DomainError(fmt::format("SignPattern: need {} signs for s = {}, got {}", s.twice() + 1, s.str(), signs.size()));
  for (int v : signs)
    if (v != 1 && v != -1) throw DomainError("SignPattern: signs must be +1 or -1");
  if (signs[0] != 1) throw DomainError("SignPattern: eps_0 must be +1");
  SignPattern p;
  p.s_ = s;
  p.signs_ = std::move(signs);
  return p;
}

SignPattern SignPattern::from_mask(HalfInt s, std::string_view mask) {
  require_spin(s, "SignPattern");
  if (mask.size() != static_cast<std::size_t>(s.twice()))
    throw DomainError(fmt::format("SignPattern: mask for s = {} must have {} characters, got \"{}\"", s.str(),
                                  s.twice(), mask));
  std::vector<int> signs{1};
  for (char c : mask) {
    if (c != '0' && c != '1') throw DomainError(fmt::format("SignPattern: mask \"{}\" must contain only 0 and 1", mask));
    signs.push_back(c == '1' ? -1 : 1);
  }
  return from_signs(s, std::move(signs));
}

SignPattern SignPattern::from_bits(HalfInt s, std::uint64_t bits) {
  require_spin(s, "SignPattern");
  if (s.twice() > 63) throw DomainError("SignPattern::from_bits: 2s must be at most 63");
  if (s.twice() < 64 && (bits >> s.twice()) != 0) throw DomainError("SignPattern::from_bits: bits beyond 2s are set");
  std::vector<int> signs{1};
  for (int l = 1; l <= s.twice(); ++l) signs.push_back((bits >> (l - 1)) & 1u ? -1 : 1);
  return from_signs(s, std::move(signs));
}

std::string SignPattern::mask() const {
  std::string m;
  for (std::size_t l = 1; l < signs_.size(); ++l) m.push_back(signs_[l] < 0 ? '1' : '0');
  return m;
}

bool SignPattern::is_all_plus() const {
  return std::all_of(signs_.begin(), signs_.end(), [](int v) { return v == 1; });
}

SignPattern SignPattern::periodic_extension(HalfInt target) const {
  require_spin(target, "SignPattern::periodic_extension");
  const int period = s_.twice();
  if (period == 0) return all_plus(target);
  std::vector<int> signs{1};
  for (int l = 1; l <= target.twice(); ++l) signs.push_back(signs_[(l - 1) % period + 1]);
  return from_signs(target, std::move(signs));
}

std::vector<SignPattern> all_sign_patterns(HalfInt s) {
  require_spin(s, "all_sign_patterns");
  if (s.twice() > 20) throw DomainError("all_sign_patterns: 2s must be at most 20");
  std::vector<SignPattern> out;
  const std::uint64_t count = std::uint64_t{1} << s.twice();
  out.reserve(count);
  for (std::uint64_t b = 0; b < count; ++b) out.push_back(SignPattern::from_bits(s, b));
  return out;
}

// ---- diagonal entries ----

double pi_s_entry(HalfInt s, const SignPattern& epsilon, HalfInt m) {
  require_pattern(s, epsilon, "pi_s_entry");
  if (!is_projection_of(m, s)) throw DomainError(fmt::format("pi_s_entry: m = {} is not a projection of s = {}", m.str(), s.str()));
  // <s m; l 0 | s m> = (-1)^(s-m) sqrt((2s+1)/(2l+1)) <s m; s -m | l 0>, one series over l
  const ClebschGordanSeries ser = clebsch_gordan_series(s, m, s, -m);
  CompensatedSum sum;
  const double two_s_1 = s.twice() + 1.0;
  for (int l = 0; l <= s.twice(); ++l)
    sum += (epsilon[l] * std::sqrt((2.0 * l + 1.0) / two_s_1) * ser.at(HalfInt::from_int(l)));
  const int phase = (s - m).to_int() % 2 ? -1 : 1;
  return phase * sum.value();
}

ComplexMatrix pi_s(HalfInt s, const SignPattern& epsilon) {
  require_pattern(s, epsilon, "pi_s");
  std::vector<double> d(s.twice() + 1);
  parallel_for(d.size(), [&](std::size_t i) { d[i] = pi_s_entry(s, epsilon, projection_at(s, static_cast<int>(i))); });
  return diagonal_matrix(d);
}

// ---- SpinKernelFamily ----

SpinKernelFamily::SpinKernelFamily(HalfInt s, SignPattern epsilon) : s_(s), epsilon_(std::move(epsilon)) {
  require_spin(s, "SpinKernelFamily");
  require_pattern(s, epsilon_, "SpinKernelFamily");
  const int dim = dimension();
  table_.assign(dim, RealMatrix::Zero(dim, dim));
  const double scale = std::sqrt(4.0 * std::numbers::pi / dim);
  parallel_for(static_cast<std::size_t>(dim) * dim, [&](std::size_t k) {
    const int i = static_cast<int>(k / dim), j = static_cast<int>(k % dim);
    const HalfInt m = projection_at(s_, i), mp = projection_at(s_, j);
    const ClebschGordanSeries ser = clebsch_gordan_series(s_, m, s_, -mp);
    const double phase = i % 2 ? -1.0 : 1.0;
    for (int l = std::abs(i - j); l < dim; ++l)
      table_[l](i, j) = scale * epsilon_[l] * phase * ser.at(HalfInt::from_int(l));
  });
  pi_diag_.resize(dim);
  parallel_for(dim, [&](std::size_t i) { pi_diag_[i] = pi_s_entry(s_, epsilon_, projection_at(s_, static_cast<int>(i))); });
}

Complex SpinKernelFamily::coefficient(HalfInt m, HalfInt mprime, SpherePoint point) const {
  const int i = index_of_projection(s_, m), j = index_of_projection(s_, mprime);
  const int q = i - j;  // m' - m
  Complex z = 0.0;
  for (int l = std::abs(q); l < dimension(); ++l) z += table_[l](i, j) * spherical_harmonic(l, q, point);
  return z;
}

SpinKernel SpinKernelFamily::at(SpherePoint point) const {
  const int dim = dimension(), lmax = dim - 1;
  const auto y = harmonic_table(lmax, point);
  ComplexMatrix z = ComplexMatrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      const int q = i - j;
      Complex acc = 0.0;
      for (int l = std::abs(q); l < dim; ++l) acc += table_[l](i, j) * y[l][q + lmax];
      z(i, j) = acc;
    }
  return {s_, epsilon_, point, std::move(z)};
}

ComplexMatrix SpinKernelFamily::pi_s() const { return diagonal_matrix(pi_diag_); }

SpinKernel SpinKernelFamily::via_rotation(SpherePoint point) const {
  const ComplexMatrix u = rotation_matrix(s_, point);
  return {s_, epsilon_, point, u * pi_s() * u.adjoint()};
}

Complex kernel_coefficient(HalfInt s, const SignPattern& epsilon, HalfInt m, HalfInt mprime, SpherePoint point) {
  require_pattern(s, epsilon, "kernel_coefficient");
  if (!is_projection_of(m, s) || !is_projection_of(mprime, s))
    throw DomainError(fmt::format("kernel_coefficient: m = {}, m' = {} out of range for s = {}", m.str(), mprime.str(), s.str()));
  const int q = (mprime - m).to_int();
  const double scale = std::sqrt(4.0 * std::numbers::pi / (s.twice() + 1));
  const ClebschGordanSeries ser = clebsch_gordan_series(s, m, s, -mprime);
  const double phase = (s - m).to_int() % 2 ? -1.0 : 1.0;
  Complex z = 0.0;
  for (int l = std::abs(q); l <= s.twice(); ++l)
    z += scale * epsilon[l] * phase * ser.at(HalfInt::from_int(l)) * spherical_harmonic(l, q, point);
  return z;
}

SpinKernel kernel_at(HalfInt s, const SignPattern& epsilon, SpherePoint point) {
  return SpinKernelFamily(s, epsilon).at(point);
}

SpinKernel kernel_via_rotation(HalfInt s, const SignPattern& epsilon, SpherePoint point) {
  const ComplexMatrix u = rotation_matrix(s, point);
  return {s, epsilon, point, u * pi_s(s, epsilon) * u.adjoint()};
}

// ---- symbols ----

namespace {

Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) { return a.cwiseProduct(b.transpose()).sum(); }

void require_operator(const ComplexMatrix& A, int dim, const char* where) {
  if (A.rows() != dim || A.cols() != dim)
    throw DomainError(fmt::format("{}: operator is {}x{}, expected {}x{}", where, A.rows(), A.cols(), dim, dim));
}

}  // namespace

Complex wigner_symbol(const ComplexMatrix& A, const SpinKernelFamily& family, SpherePoint point) {
  require_operator(A, family.dimension(), "wigner_symbol");
  return trace_product(family.at(point).matrix, A);
}

Complex wigner_symbol(const ComplexMatrix& A, HalfInt s, const SignPattern& epsilon, SpherePoint point) {
  require_operator(A, spin_dimension(s), "wigner_symbol");
  return wigner_symbol(A, SpinKernelFamily(s, epsilon), point);
}

std::vector<Complex> sample_symbol(const ComplexMatrix& A, const SpinKernelFamily& family, const SphereGrid& grid) {
  require_operator(A, family.dimension(), "sample_symbol");
  std::vector<Complex> w(grid.size());
  parallel_for(w.size(), [&](std::size_t i) { w[i] = trace_product(family.at(grid.point(i)).matrix, A); });
  return w;
}

ComplexMatrix reconstruct_operator(const std::vector<Complex>& samples, const SphereGrid& grid,
                                   const SpinKernelFamily& family) {
  const HalfInt s = family.s();
  if (grid.bandlimit() < 2 * s.twice())
    throw PreconditionError(fmt::format("reconstruct_operator: grid bandlimit {} is below 4s = {} for s = {}",
                                        grid.bandlimit(), 2 * s.twice(), s.str()));
  if (samples.size() != grid.size())
    throw DomainError(fmt::format("reconstruct_operator: {} samples for a grid of {} points", samples.size(), grid.size()));
  const int dim = family.dimension();
  ComplexMatrix a = ComplexMatrix::Zero(dim, dim);
  // kernels in parallel per block, accumulation in index order
  constexpr std::size_t kBlock = 256;
  std::vector<ComplexMatrix> kernels(kBlock);
  for (std::size_t begin = 0; begin < grid.size(); begin += kBlock) {
    const std::size_t n = std::min(kBlock, grid.size() - begin);
    parallel_for(n, [&](std::size_t k) { kernels[k] = family.at(grid.point(begin + k)).matrix; });
    for (std::size_t k = 0; k < n; ++k) a += (grid.weight(begin + k) * samples[begin + k]) * kernels[k];
  }
  return a * (dim / (4.0 * std::numbers::pi));
}

ComplexMatrix reconstruct_operator(const std::vector<Complex>& samples, const SphereGrid& grid, HalfInt s,
                                   const SignPattern& epsilon) {
  return reconstruct_operator(samples, grid, SpinKernelFamily(s, epsilon));
}

// ---- audit ----

std::string AuditReport::to_text() const {
  std::string out;
  out += "spin kernel audit\n";
  out += fmt::format("s = {}\n", s.str());
  out += fmt::format("epsilon_mask = {}\n", epsilon_mask.empty() ? "-" : epsilon_mask);
  out += fmt::format("kernel = {}\n", negative_control ? "negative-control" : "standard");
  out += fmt::format("trials = {}\nseed = {}\n", trials, seed);
  out += fmt::format("hermiticity = {:.17g}\n", hermiticity);
  out += fmt::format("normalization = {:.17g}\n", normalization);
  out += fmt::format("covariance = {:.17g}\n", covariance);
  out += fmt::format("roundtrip = {:.17g}\n", roundtrip);
  out += fmt::format("tolerance = {:.17g}\n", kTolerance);
  out += fmt::format("result = {}\n", pass ? "PASS" : "FAIL");
  return out;
}

AuditReport audit_postulates(HalfInt s, const SignPattern& epsilon, const SphereGrid& grid, const AuditOptions& options) {
  require_pattern(s, epsilon, "audit_postulates");
  if (options.trials < 1) throw DomainError("audit_postulates: trials must be positive");
  const SpinKernelFamily family(s, epsilon);
  const int dim = family.dimension();

  // Rotation by pi about z, made Hermitian by dropping the global phase.
  std::vector<double> flip(dim);
  for (int i = 0; i < dim; ++i) flip[i] = i % 2 ? -1.0 : 1.0;
  const ComplexMatrix flip_matrix = diagonal_matrix(flip);
  auto kernel = [&](SpherePoint p) -> ComplexMatrix {
    if (!options.negative_control) return family.at(p).matrix;
    const ComplexMatrix u = rotation_matrix(s, p);
    return u * flip_matrix * u.adjoint();
  };

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto random_point = [&] {
    const double c = 2.0 * unit(rng) - 1.0;
    return SpherePoint{std::acos(c), 2.0 * std::numbers::pi * unit(rng)};
  };

  AuditReport r;
  r.s = s;
  r.epsilon_mask = epsilon.mask();
  r.negative_control = options.negative_control;
  r.trials = options.trials;
  r.seed = options.seed;

  for (int t = 0; t < options.trials; ++t) {
    const SpherePoint p = random_point();
    const ComplexMatrix d = kernel(p);
    r.hermiticity = std::max(r.hermiticity, hermiticity_residual(d));
    r.normalization = std::max(r.normalization, std::abs(d.trace() - 1.0));

    const SpherePoint axis = random_point();
    const ComplexMatrix u = rotation_matrix(s, axis);
    const SpherePoint rotated = SpherePoint::from_vector(rotation_so3(axis) * p.unit_vector());
    r.covariance = std::max(r.covariance, max_abs(u * d * u.adjoint() - kernel(rotated)));
  }

  if (grid.bandlimit() < 2 * s.twice())
    throw PreconditionError(fmt::format("audit_postulates: grid bandlimit {} is below 4s = {}", grid.bandlimit(), 2 * s.twice()));
  std::vector<ComplexMatrix> grid_kernels(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { grid_kernels[i] = kernel(grid.point(i)); });
  for (int t = 0; t < options.trials; ++t) {
    ComplexMatrix x(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        const double re = gauss(rng);
        x(i, j) = Complex(re, gauss(rng));
      }
    const ComplexMatrix a = 0.5 * (x + x.adjoint());
    ComplexMatrix rec = ComplexMatrix::Zero(dim, dim);
    for (std::size_t i = 0; i < grid.size(); ++i)
      rec += (grid.weight(i) * trace_product(grid_kernels[i], a)) * grid_kernels[i];
    rec *= dim / (4.0 * std::numbers::pi);
    r.roundtrip = std::max(r.roundtrip, max_abs(rec - a));
  }

  r.pass = r.hermiticity < AuditReport::kTolerance && r.normalization < AuditReport::kTolerance &&
           r.covariance < AuditReport::kTolerance && r.roundtrip < AuditReport::kTolerance;
  return r;
}

}  // namespace phasecontract
