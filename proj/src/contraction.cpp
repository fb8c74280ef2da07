#include "phasecontract/contraction.hpp"

#include <fmt/format.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>

#include "phasecontract/clebsch_gordan.hpp"
#include "phasecontract/diagnostics.hpp"
#include "phasecontract/errors.hpp"
#include "phasecontract/log_domain.hpp"
#include "phasecontract/parallel.hpp"
#include "phasecontract/special_functions.hpp"
#include "phasecontract/spin_operators.hpp"

namespace phasecontract {

ContractionScale ContractionScale::for_spin(HalfInt s) {
  if (s.twice() <= 0) throw DomainError(fmt::format("ContractionScale: s must be positive, got {}", s.str()));
  return {s, 1.0 / std::sqrt(static_cast<double>(s.twice()))};
}

ContractedOperators contracted_operators(HalfInt s, const ContractionScale& scale) {
  if (scale.s != s) throw DomainError("contracted_operators: scale was built for a different s");
  const SpinMatrices sm = spin_matrices(s);
  const int dim = spin_dimension(s);
  return {scale.c * sm.Sminus, scale.c * sm.Splus,
          -sm.Sz + ComplexMatrix::Identity(dim, dim) / (2.0 * scale.c * scale.c)};
}

ComplexMatrix contracted_rotation(HalfInt s, Complex alpha) {
  const ContractionScale scale = ContractionScale::for_spin(s);
  const double theta = 2.0 * scale.c * std::abs(alpha);
  if (theta > std::numbers::pi)
    warn(fmt::format("contracted_rotation: theta = {:.6g} exceeds pi for s = {}, |alpha| = {:.6g}", theta, s.str(),
                     std::abs(alpha)));
  return rotation_matrix(s, {theta, std::arg(alpha)});
}

namespace {

void check_term_indices(HalfInt s, int l, int n, const char* where) {
  if (s.twice() < 0) throw DomainError(fmt::format("{}: s must be non-negative", where));
  if (l < 0 || l > s.twice()) throw DomainError(fmt::format("{}: l = {} outside 0 .. 2s = {}", where, l, s.twice()));
  if (n < 0 || n > s.twice()) throw DomainError(fmt::format("{}: n = {} outside 0 .. 2s = {}", where, n, s.twice()));
}

void check_small_n(HalfInt s, int n, const char* where) {
  if (n < 0) throw DomainError(fmt::format("{}: n must be non-negative", where));
  if (20 * n > s.twice())
    throw PreconditionError(fmt::format("{}: n = {} violates n <= s/10 for s = {}", where, n, s.str()));
}

int sign_of_power(int n) { return n % 2 ? -1 : 1; }

}  // namespace

double term_delta(HalfInt s, int l, int n) {
  check_term_indices(s, l, n, "term_delta");
  const HalfInt m = s - HalfInt::from_int(n);
  return std::sqrt((2.0 * l + 1.0) / (s.twice() + 1.0)) *
         clebsch_gordan_float(s, m, s, -m, HalfInt::from_int(l), HalfInt());
}

TermTable contraction_sum(HalfInt s, int n, const SignPattern& epsilon) {
  check_small_n(s, n, "contraction_sum");
  if (epsilon.s() != s) throw DomainError("contraction_sum: sign pattern is for a different s");
  const HalfInt m = s - HalfInt::from_int(n);
  const ClebschGordanSeries ser = clebsch_gordan_series(s, m, s, -m);
  TermTable t;
  t.s = s;
  t.n = n;
  const double two_s_1 = s.twice() + 1.0;
  CompensatedSum sum;
  for (int l = 0; l <= s.twice(); ++l) {
    t.x.push_back(l * (l + 1.0) / two_s_1);
    const double term = epsilon[l] * std::sqrt((2.0 * l + 1.0) / two_s_1) * ser.at(HalfInt::from_int(l));
    t.terms.push_back(term);
    sum += term;
    t.partial_sums.push_back(sum.value());
  }
  t.total = sum.value();
  return t;
}

std::vector<double> lambda_recursion(int n_max, double x) {
  if (n_max < 0) throw DomainError("lambda_recursion: n_max must be non-negative");
  std::vector<double> v{1.0};
  double prev = 0.0;
  for (int n = 0; n < n_max; ++n) {
    const double next = ((x - (2.0 * n + 1.0)) * v[n] - n * prev) / (n + 1.0);
    prev = v[n];
    v.push_back(next);
  }
  return v;
}

double laguerre_integral(int n, double t) {
  if (!(t > 0.0)) throw DomainError(fmt::format("laguerre_integral: t must be positive, got {}", t));
  if (n < 0) throw DomainError("laguerre_integral: n must be non-negative");
  auto f = [&](double x) { return laguerre(n, x) * std::exp(-x / t); };
  double error = 0.0, l1 = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      f, 0.0, std::numeric_limits<double>::infinity(), 15, 1e-14, &error, &l1);
  if (!(error <= 1e-10 * std::max(l1, 1e-300)))
    throw ConvergenceError(fmt::format("laguerre_integral: error estimate {:.3g} for n = {}, t = {}", error, n, t));
  return value;
}

double laguerre_riemann_sum(HalfInt s, int n) {
  if (s.twice() < 0 || n < 0) throw DomainError("laguerre_riemann_sum: s and n must be non-negative");
  const double two_s_1 = s.twice() + 1.0;
  CompensatedSum sum;
  for (int l = 0; l <= s.twice(); ++l) {
    const double x = l * (l + 1.0) / two_s_1;
    sum += (2.0 * l + 1.0) / two_s_1 * laguerre(n, x) * std::exp(-0.5 * x);
  }
  return sum.value();
}

double coupling_order_residual() {
  double worst = 0.0;
  for (int two_s = 1; two_s <= 10; ++two_s) {
    const HalfInt s = HalfInt::from_twice(two_s);
    std::vector<SignPattern> patterns{SignPattern::all_plus(s)};
    std::vector<int> alt{1};
    for (int l = 1; l <= two_s; ++l) alt.push_back(sign_of_power(l));
    patterns.push_back(SignPattern::from_signs(s, alt));
    patterns.push_back(SignPattern::from_bits(s, (std::uint64_t{1} << two_s) - 1));
    for (const auto& eps : patterns)
      for (int n = 0; n <= two_s; ++n) {
        const HalfInt m = s - HalfInt::from_int(n);
        double diag = 0.0, series = 0.0;
        for (int l = 0; l <= two_s; ++l) {
          const HalfInt L = HalfInt::from_int(l);
          diag += eps[l] * (2.0 * l + 1.0) / (two_s + 1.0) * clebsch_gordan_racah_log(s, m, L, HalfInt(), s, m);
          series += eps[l] * std::sqrt((2.0 * l + 1.0) / (two_s + 1.0)) * clebsch_gordan_racah_log(s, m, s, -m, L, HalfInt());
        }
        worst = std::max(worst, std::abs(diag - sign_of_power(n) * series));
      }
  }
  return worst;
}

namespace {

void assert_coupling_order() {
  static std::once_flag once;
  std::call_once(once, [] {
    const double r = coupling_order_residual();
    if (!(r < 1e-12))
      throw std::logic_error(fmt::format("coupling-order consistency check failed, residual {:.3g}", r));
  });
}

}  // namespace

double diagonal_limit(HalfInt s, int n, const SignPattern& epsilon) {
  check_small_n(s, n, "diagonal_limit");
  assert_coupling_order();
  return pi_s_entry(s, epsilon, s - HalfInt::from_int(n));
}

ComplexMatrix contracted_kernel_block(HalfInt s, Complex alpha, int block, const SignPattern& epsilon) {
  if (block < 0) throw DomainError("contracted_kernel_block: block must be non-negative");
  if (10 * block > s.value() || s.twice() <= 0)
    throw PreconditionError(fmt::format("contracted_kernel_block: block = {} violates block <= s/10 for s = {}", block, s.str()));
  if (epsilon.s() != s) throw DomainError("contracted_kernel_block: sign pattern is for a different s");
  const ContractionScale scale = ContractionScale::for_spin(s);
  const double theta = 2.0 * scale.c * std::abs(alpha), phi = std::arg(alpha);
  if (theta > std::numbers::pi)
    warn(fmt::format("contracted_kernel_block: theta = {:.6g} exceeds pi for s = {}", theta, s.str()));
  const int dim = spin_dimension(s), rows = block + 1;
  const RealMatrix d = wigner_small_d_top_rows(s, theta, rows);
  const ComplexMatrix pi = pi_s(s, epsilon);
  ComplexMatrix u(rows, dim);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < dim; ++k) u(i, k) = d(i, k) * std::exp(Complex(0.0, -(k - i) * phi));
  return u * pi.diagonal().asDiagonal() * u.adjoint();
}

double kernel_block_compare(HalfInt s, Complex alpha, int block, const SignPattern& epsilon) {
  const ComplexMatrix spin = contracted_kernel_block(s, alpha, block, epsilon);
  const ComplexMatrix particle = particle_kernel(FockSpace(block), PhasePoint{alpha});
  return max_abs(spin - particle);
}

int SweepReport::converging_count() const {
  int c = 0;
  for (const auto& e : entries) c += e.converges;
  return c;
}

SweepReport epsilon_sweep(const std::vector<HalfInt>& s_list, const std::vector<int>& n_list,
                          const std::vector<SignPattern>& patterns) {
  if (s_list.size() < 2) throw DomainError("epsilon_sweep: need at least two values of s");
  if (n_list.empty() || patterns.empty()) throw DomainError("epsilon_sweep: empty n list or pattern list");
  for (std::size_t i = 1; i < s_list.size(); ++i)
    if (!(s_list[i - 1] < s_list[i])) throw DomainError("epsilon_sweep: s values must be increasing");
  for (int n : n_list) check_small_n(s_list.front(), n, "epsilon_sweep");
  assert_coupling_order();

  SweepReport report{s_list, n_list, {}};
  report.entries.resize(patterns.size());
  const std::size_t ns = s_list.size();
  for (std::size_t p = 0; p < patterns.size(); ++p) {
    report.entries[p].base = patterns[p];
    report.entries[p].distance.assign(ns, std::vector<double>(n_list.size()));
  }
  parallel_for(patterns.size() * ns, [&](std::size_t k) {
    const std::size_t p = k / ns, i = k % ns;
    const SignPattern eps = patterns[p].periodic_extension(s_list[i]);
    for (std::size_t j = 0; j < n_list.size(); ++j) {
      const HalfInt m = s_list[i] - HalfInt::from_int(n_list[j]);
      report.entries[p].distance[i][j] = std::abs(pi_s_entry(s_list[i], eps, m) - 2.0 * sign_of_power(n_list[j]));
    }
  });
  for (auto& e : report.entries) {
    bool ok = true;
    for (std::size_t j = 0; j < n_list.size(); ++j) {
      for (std::size_t i = 1; i < ns; ++i) ok = ok && e.distance[i][j] < e.distance[i - 1][j];
      ok = ok && e.distance[ns - 1][j] < SweepReport::kFinalTolerance;
    }
    e.converges = ok;
  }
  return report;
}

std::vector<SignPattern> sweep_patterns(HalfInt base_s, int random_count, std::uint64_t seed) {
  if (base_s.twice() <= 8) return all_sign_patterns(base_s);
  if (base_s.twice() > 63) throw DomainError("sweep_patterns: 2s must be at most 63");
  std::vector<SignPattern> out{SignPattern::all_plus(base_s)};
  std::set<std::uint64_t> seen{0};
  for (int l = 0; l < base_s.twice(); ++l) {
    out.push_back(SignPattern::from_bits(base_s, std::uint64_t{1} << l));
    seen.insert(std::uint64_t{1} << l);
  }
  std::mt19937_64 rng(seed);
  const std::uint64_t mask = base_s.twice() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << base_s.twice()) - 1;
  for (int tries = 0; random_count > 0 && tries < 64 * random_count + 64; ++tries) {
    const std::uint64_t b = rng() & mask;
    if (!seen.insert(b).second) continue;
    out.push_back(SignPattern::from_bits(base_s, b));
    --random_count;
  }
  return out;
}

}  // namespace phasecontract
