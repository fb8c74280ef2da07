#include "phasecontract/acceptance.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "phasecontract/clebsch_gordan.hpp"
#include "phasecontract/contraction.hpp"
#include "phasecontract/particle_kernel.hpp"
#include "phasecontract/special_functions.hpp"
#include "phasecontract/sphere_grid.hpp"
#include "phasecontract/spin_kernel.hpp"
#include "phasecontract/spin_operators.hpp"
#include "phasecontract/sqrt_rational.hpp"

namespace phasecontract {

bool AcceptanceReport::all_pass() const {
  for (const auto& r : results)
    if (!r.pass) return false;
  return !results.empty();
}

std::string format_criterion(const CriterionResult& r) {
  return fmt::format("[{}] {:>2} {}: {} ({:.2f} s)", r.pass ? "PASS" : "FAIL", r.id, r.name, r.detail, r.seconds);
}

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

HalfInt spin(int s) { return HalfInt::from_int(s); }

Outcome contraction_limit() {
  const std::vector<int> ladder{100, 200, 400};
  bool decreasing = true;
  double worst_final = 0.0;
  for (int n = 0; n <= 3; ++n) {
    double prev = INFINITY;
    for (int s : ladder) {
      const double d = std::abs(contraction_sum(spin(s), n, SignPattern::all_plus(spin(s))).total - 2.0);
      decreasing = decreasing && d < prev;
      prev = d;
    }
    worst_final = std::max(worst_final, prev);
  }
  return {decreasing && worst_final < 0.05,
          fmt::format("max_n |S(400,n)-2| = {:.6g} (gate 0.05), decreasing in s: {}", worst_final, decreasing ? "yes" : "no")};
}

Outcome integral_identity() {
  double worst = 0.0;
  for (double t : {0.5, 1.0, 2.0})
    for (int n = 0; n <= 10; ++n) {
      const double target = t * std::pow(1.0 - t, n);
      const double err = std::abs(laguerre_integral(n, t) - target);
      // exact zeros (t = 1, n >= 1) are compared absolutely
      worst = std::max(worst, target != 0.0 ? err / std::abs(target) : err);
    }
  return {worst < 1e-8, fmt::format("max error = {:.3g} (relative; absolute where t(1-t)^n = 0), gate 1e-8", worst)};
}

// sum_k C(n,k) (-x)^k / k! in exact rational arithmetic (x converted exactly)
double laguerre_exact(int n, double x) {
  const Rational X(x);
  Rational sum = 0, binom = 1, power = 1, fact = 1;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) {
      binom = binom * (n - k + 1) / k;
      power *= -X;
      fact *= k;
    }
    sum += binom * power / fact;
  }
  return static_cast<double>(sum);
}

Outcome lambda_identity() {
  double worst = 0.0;
  for (double x : {0.1, 1.0, 5.0, 20.0}) {
    const auto lam = lambda_recursion(15, x);
    for (int n = 0; n <= 15; ++n) {
      const double ref = (n % 2 ? -1.0 : 1.0) * laguerre_exact(n, x);
      const double err = std::abs(lam[n] - ref);
      // L_1(1) = 0 exactly
      worst = std::max(worst, ref != 0.0 ? err / std::abs(ref) : err);
    }
  }
  return {worst < 1e-10, fmt::format("max relative error vs exact rational sum = {:.3g} (absolute at exact zeros), gate 1e-10", worst)};
}

// [l(l+1) - 2s(s+1) + 2m^2] C_m = [s(s+1) - m(m+1)] C_{m+1} + [s(s+1) - m(m-1)] C_{m-1},
// C_m = <s m; s -m | l 0>.
Outcome cg_recursion() {
  bool exact_ok = true;
  int exact_checked = 0;
  for (int two_s = 1; two_s <= 12; ++two_s) {
    const HalfInt s = HalfInt::from_twice(two_s);
    const Rational ss = Rational(two_s * (two_s + 2), 4);
    for (int l = 0; l <= two_s; ++l) {
      const HalfInt L = HalfInt::from_int(l);
      auto C = [&](HalfInt m) { return clebsch_gordan(s, m, s, -m, L, HalfInt()); };
      for (int i = 0; i <= two_s; ++i) {
        const HalfInt m = projection_at(s, i);
        const Rational mm = Rational(m.twice(), 2);
        const HalfInt one = HalfInt::from_int(1);
        const SqrtRational lhs = C(m) * (Rational(l * (l + 1)) - 2 * ss + 2 * mm * mm);
        const SqrtRational rhs = C(m + one) * (ss - mm * (mm + 1)) + C(m - one) * (ss - mm * (mm - 1));
        exact_ok = exact_ok && (lhs - rhs).is_zero();
        ++exact_checked;
      }
    }
  }

  double worst = 0.0;
  for (int two_s = 1; two_s <= 100; ++two_s) {
    const HalfInt s = HalfInt::from_twice(two_s);
    const double sv = s.value(), ss = sv * (sv + 1.0);
    const int dim = two_s + 1;
    RealMatrix c(dim, dim);  // c(i, l)
    for (int i = 0; i < dim; ++i) {
      const HalfInt m = projection_at(s, i);
      for (int l = 0; l < dim; ++l) c(i, l) = clebsch_gordan_float(s, m, s, -m, HalfInt::from_int(l), HalfInt());
    }
    for (int l = 0; l < dim; ++l)
      for (int i = 0; i < dim; ++i) {
        const double m = projection_at(s, i).value();
        const double a = l * (l + 1.0) - 2.0 * ss + 2.0 * m * m, b = ss - m * (m + 1.0), d = ss - m * (m - 1.0);
        const double up = i > 0 ? c(i - 1, l) : 0.0, down = i + 1 < dim ? c(i + 1, l) : 0.0;
        const double scale = std::max({std::abs(a), std::abs(b), std::abs(d), 1.0});
        worst = std::max(worst, std::abs(a * c(i, l) - b * up - d * down) / scale);
      }
  }
  return {exact_ok && worst < 1e-10,
          fmt::format("exact residual zero in {} cases (s <= 6): {}; float residual for s <= 50 = {:.3g}, gate 1e-10",
                      exact_checked, exact_ok ? "yes" : "no", worst)};
}

Outcome lowest_term_asymptotic() {
  const HalfInt s = spin(200);
  const double two_s_1 = s.twice() + 1.0;
  double worst = 0.0;
  for (int l = 0; l * l <= 200; ++l) {
    const double exact = term_delta(s, l, 0);
    const double approx = (2.0 * l + 1.0) / two_s_1 * std::exp(-0.5 * l * (l + 1.0) / two_s_1);
    worst = std::max(worst, std::abs(approx - exact) / std::abs(exact));
  }
  return {worst < 5.0 / 200.0, fmt::format("max relative error (s = 200, l <= 14) = {:.3g}, gate 5/s = 0.025", worst)};
}

Outcome spin_audit() {
  AuditOptions opts;
  opts.trials = 4;
  opts.seed = 2024;
  double worst = 0.0;
  int count = 0;
  bool postulates = true;
  for (int two_s = 0; two_s <= 4; ++two_s) {
    const HalfInt s = HalfInt::from_twice(two_s);
    const SphereGrid grid = SphereGrid::for_spin(s);
    for (const auto& eps : all_sign_patterns(s)) {
      const AuditReport r = audit_postulates(s, eps, grid, opts);
      worst = std::max(worst, r.roundtrip);
      postulates = postulates && r.pass;
      ++count;
    }
  }
  const HalfInt s4 = spin(4);
  const SphereGrid grid4 = SphereGrid::for_spin(s4);
  std::mt19937_64 rng(7);
  for (int k = 0; k < 20; ++k) {
    const SignPattern eps = SignPattern::from_bits(s4, rng() & 0xffu);
    const AuditReport r = audit_postulates(s4, eps, grid4, opts);
    worst = std::max(worst, r.roundtrip);
    postulates = postulates && r.pass;
    ++count;
  }
  double control = INFINITY;
  opts.negative_control = true;
  for (int two_s : {1, 2, 3, 4, 8}) {
    const HalfInt s = HalfInt::from_twice(two_s);
    control = std::min(control, audit_postulates(s, SignPattern::all_plus(s), SphereGrid::for_spin(s), opts).roundtrip);
  }
  return {worst < 1e-10 && control > 1e-3 && postulates,
          fmt::format("{} kernels: max roundtrip error = {:.3g} (gate 1e-10), all postulates pass: {}; "
                      "negative control min roundtrip error = {:.3g} (must exceed 1e-3)",
                      count, worst, postulates ? "yes" : "no", control)};
}

Outcome dual_construction() {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const int two_s = 1 + static_cast<int>(rng() % 8);
    const HalfInt s = HalfInt::from_twice(two_s);
    const SignPattern eps = SignPattern::from_bits(s, rng() & ((1u << two_s) - 1));
    const SpherePoint p{std::acos(2.0 * unit(rng) - 1.0), 2.0 * std::numbers::pi * unit(rng)};
    worst = std::max(worst, max_abs(kernel_at(s, eps, p).matrix - kernel_via_rotation(s, eps, p).matrix));
  }
  return {worst < 1e-10, fmt::format("50 draws, s <= 4: max |multipole - rotated| = {:.3g}, gate 1e-10", worst)};
}

Outcome particle_properties() {
  const FockSpace space(60);
  const bool origin = particle_kernel(space, {}) == 2.0 * parity(space);
  double diag = 0.0;
  for (double r : {0.25, 0.5, 0.75, 1.0})
    for (double phi : {0.0, 1.0, 2.5, 4.0}) {
      const PhasePoint pt{std::polar(r, phi)};
      const ComplexMatrix d = particle_kernel(space, pt);
      for (int n = 0; n <= space.n_max / 2; ++n)
        diag = std::max(diag, std::abs(d(n, n) - particle_kernel_diagonal(n, pt)));
    }
  const FockOperators ops = fock_operators(space);
  const ComplexMatrix pi = parity(space);
  const double anti = max_abs(pi * ops.a * pi.adjoint() + ops.a);
  return {origin && diag < 1e-8 && anti < 1e-12,
          fmt::format("Delta(0) == 2 Pi: {}; max diagonal error (|alpha| <= 1, n <= 30) = {:.3g} (gate 1e-8); "
                      "|Pi a Pi^+ + a| = {:.3g} (gate 1e-12)",
                      origin ? "yes" : "no", diag, anti)};
}

Outcome block_convergence() {
  std::vector<double> dev;
  for (int s : {100, 200, 400}) dev.push_back(kernel_block_compare(spin(s), {0.5, 0.0}, 3, SignPattern::all_plus(spin(s))));
  const bool ok = dev[1] < dev[0] && dev[2] < dev[1];
  return {ok, fmt::format("deviation at s = 100, 200, 400: {:.6g}, {:.6g}, {:.6g}", dev[0], dev[1], dev[2])};
}

Outcome uniqueness() {
  const SweepReport r = epsilon_sweep({spin(50), spin(100), spin(200), spin(400)}, {0, 1, 2, 3}, all_sign_patterns(spin(2)));
  std::string converging;
  bool all_plus_converges = false;
  for (const auto& e : r.entries)
    if (e.converges) {
      converging += (converging.empty() ? "" : " ") + e.base.mask();
      all_plus_converges = all_plus_converges || e.base.is_all_plus();
    }
  const bool ok = r.converging_count() == 1 && all_plus_converges;
  return {ok, fmt::format("{} patterns at 2s = 4, converging masks: [{}]", r.entries.size(), converging)};
}

Outcome dual_wigner() {
  const FockSpace space(40);
  const auto points = phase_grid(-1.5, 1.5, 5, -1.5, 1.5, 5);
  double worst = 0.0;
  for (int n = 0; n <= 5; ++n) {
    ComplexMatrix rho = ComplexMatrix::Zero(space.dimension(), space.dimension());
    rho(n, n) = 1.0;
    ComplexVector psi = ComplexVector::Zero(n + 1);
    psi(n) = 1.0;
    const auto w = wigner_function(rho, space, points);
    for (std::size_t i = 0; i < points.size(); ++i)
      worst = std::max(worst, std::abs(w[i] - wigner_integral_check(psi, points[i].q(), points[i].p())));
  }
  return {worst < 1e-6, fmt::format("Fock n <= 5 on 5x5 grid: max |trace - integral| = {:.3g}, gate 1e-6", worst)};
}

}  // namespace

AcceptanceReport run_acceptance_suite(std::ostream* out) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"contraction limit", contraction_limit},
      {"laguerre integral identity", integral_identity},
      {"lambda/laguerre identity", lambda_identity},
      {"clebsch-gordan recursion", cg_recursion},
      {"asymptotic lowest term", lowest_term_asymptotic},
      {"spin kernel audit", spin_audit},
      {"dual kernel construction", dual_construction},
      {"particle kernel properties", particle_properties},
      {"kernel block convergence", block_convergence},
      {"uniqueness of all-plus", uniqueness},
      {"dual-path wigner function", dual_wigner},
  };
  AcceptanceReport report;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    CriterionResult r;
    r.id = static_cast<int>(i + 1);
    r.name = criteria[i].first;
    const auto start = std::chrono::steady_clock::now();
    try {
      const Outcome o = criteria[i].second();
      r.pass = o.pass;
      r.detail = o.detail;
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (out) *out << format_criterion(r) << std::endl;
    report.results.push_back(std::move(r));
  }
  return report;
}

}  // namespace phasecontract
