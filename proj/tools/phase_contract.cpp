// phase-contract: command-line front end for the phasecontract library.

#include <fmt/format.h>

#include <CLI11.hpp>
#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "phasecontract/acceptance.hpp"
#include "phasecontract/clebsch_gordan.hpp"
#include "phasecontract/contraction.hpp"
#include "phasecontract/operator_io.hpp"
#include "phasecontract/particle_kernel.hpp"
#include "phasecontract/sphere_grid.hpp"
#include "phasecontract/spin_kernel.hpp"

using namespace phasecontract;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

// Thrown for bad flag combinations detected after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  int two_s = 1;
  std::string epsilon_mask;
  double theta = 0.0, phi = 0.0;
  double alpha_re = 0.0, alpha_im = 0.0;
  int n_max = 20;
  int block = 3;
  int n_theta = 0, n_phi = 0;  // 0: smallest exact grid for the spin
  int trials = 8;
  std::uint64_t seed = 1;
  bool negative_control = false;
  std::string out;
  std::string format = "csv";
  std::string method = "multipole";
  std::string operator_path, symbols_path;
  std::optional<int> fock_state;
  double q_min = -3.0, q_max = 3.0, p_min = -3.0, p_max = 3.0;
  int n_q = 31, n_p = 31;
  std::vector<int> two_s_list, n_list, ladder;
  bool integral_t2 = false;
  bool terms = false;
  int base_two_s = 4;
  int random_count = 16;
  std::vector<std::string> cg_args;
  bool strict = false;
};

HalfInt spin_of(int two_s) {
  if (two_s < 0) throw UsageError("--two-s must be non-negative");
  return HalfInt::from_twice(two_s);
}

SignPattern pattern_for(const Config& c, HalfInt s) {
  if (c.epsilon_mask.empty()) return SignPattern::all_plus(s);
  return SignPattern::from_mask(s, c.epsilon_mask);
}

// The mask describes a base pattern of spin len/2, continued periodically.
SignPattern extended_pattern_for(const Config& c, HalfInt s) {
  if (c.epsilon_mask.empty()) return SignPattern::all_plus(s);
  const HalfInt base = HalfInt::from_twice(static_cast<int>(c.epsilon_mask.size()));
  return SignPattern::from_mask(base, c.epsilon_mask).periodic_extension(s);
}

SphereGrid grid_for(const Config& c, HalfInt s) {
  if (c.n_theta == 0 && c.n_phi == 0) return SphereGrid::for_spin(s);
  if (c.n_theta <= 0 || c.n_phi <= 0) throw UsageError("--n-theta and --n-phi must both be positive");
  return SphereGrid::gauss_legendre(c.n_theta, c.n_phi);
}

std::string num(double v) { return fmt::format("{:.17g}", v); }

int cmd_cg(const Config& c) {
  if (c.cg_args.size() != 6) throw UsageError("cg needs six arguments: j1 m1 j2 m2 J M");
  HalfInt q[6];
  for (int i = 0; i < 6; ++i) q[i] = parse_half_int(c.cg_args[i]);
  const auto rules = c.strict ? SelectionRules::strict : SelectionRules::lenient;
  const SqrtRational exact = clebsch_gordan(q[0], q[1], q[2], q[3], q[4], q[5], rules);
  const double value = clebsch_gordan_float(q[0], q[1], q[2], q[3], q[4], q[5], rules);
  std::string text = fmt::format("exact = {}\nfloat = {}\n", exact.str(), num(value));
  if (q[1] + q[3] != q[5])
    text += "note: M != m1 + m2, coefficient vanishes\n";
  else if (!satisfies_triangle(q[0], q[2], q[4]))
    text += "note: triangle rule violated, coefficient vanishes\n";
  else if (!is_projection_of(q[1], q[0]) || !is_projection_of(q[3], q[2]) || !is_projection_of(q[5], q[4]))
    text += "note: projection out of range, coefficient vanishes\n";
  write_text(c.out, text);
  return 0;
}

int cmd_kernel(const Config& c) {
  const HalfInt s = spin_of(c.two_s);
  const SignPattern eps = pattern_for(c, s);
  const SpherePoint p{c.theta, c.phi};
  ComplexMatrix m;
  if (c.method == "multipole")
    m = kernel_at(s, eps, p).matrix;
  else if (c.method == "rotation")
    m = kernel_via_rotation(s, eps, p).matrix;
  else
    throw UsageError("--method must be multipole or rotation");
  write_text(c.out, spin_operator_json(m, s));
  return 0;
}

int cmd_wigner(const Config& c) {
  std::ostringstream os;
  if (c.fock_state || (!c.operator_path.empty() && read_operator_file(c.operator_path).n_max)) {
    ComplexMatrix rho;
    int n_max = c.n_max;
    if (c.fock_state) {
      if (*c.fock_state < 0 || *c.fock_state > n_max) throw UsageError("--fock-state must lie in 0 .. n_max");
      rho = ComplexMatrix::Zero(n_max + 1, n_max + 1);
      rho(*c.fock_state, *c.fock_state) = 1.0;
    } else {
      const OperatorFile f = read_operator_file(c.operator_path);
      n_max = *f.n_max;
      rho = f.matrix;
    }
    const auto points = phase_grid(c.q_min, c.q_max, c.n_q, c.p_min, c.p_max, c.n_p);
    const auto w = wigner_function(rho, FockSpace(n_max), points);
    if (c.format == "json") {
      std::vector<std::vector<double>> rows;
      for (std::size_t i = 0; i < points.size(); ++i) rows.push_back({points[i].q(), points[i].p(), w[i]});
      os << "{\"n_max\": " << n_max << ", \"columns\": [\"q\", \"p\", \"w\"], \"rows\": [";
      for (std::size_t i = 0; i < rows.size(); ++i)
        os << (i ? ", " : "") << fmt::format("[{}, {}, {}]", num(rows[i][0]), num(rows[i][1]), num(rows[i][2]));
      os << "]}\n";
    } else {
      write_wigner_csv(os, points, w);
    }
  } else {
    if (c.operator_path.empty()) throw UsageError("wigner needs --operator FILE or --fock-state N");
    const OperatorFile f = read_operator_file(c.operator_path);
    const HalfInt s = *f.s;
    const SignPattern eps = pattern_for(c, s);
    const SphereGrid grid = grid_for(c, s);
    const auto w = sample_symbol(f.matrix, SpinKernelFamily(s, eps), grid);
    if (c.format == "json") {
      os << "{\"two_s\": " << s.twice() << ", \"columns\": [\"theta\", \"phi\", \"weight\", \"re\", \"im\"], \"rows\": [";
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const SpherePoint p = grid.point(i);
        os << (i ? ", " : "")
           << fmt::format("[{}, {}, {}, {}, {}]", num(p.theta), num(p.phi), num(grid.weight(i)), num(w[i].real()),
                          num(w[i].imag()));
      }
      os << "]}\n";
    } else {
      write_symbol_csv(os, grid, w);
    }
  }
  write_text(c.out, os.str());
  return 0;
}

int cmd_reconstruct(const Config& c) {
  if (c.symbols_path.empty()) throw UsageError("reconstruct needs --symbols FILE (CSV from the wigner subcommand)");
  const HalfInt s = spin_of(c.two_s);
  const SphereGrid grid = grid_for(c, s);
  const auto samples = read_symbol_csv(c.symbols_path);
  const ComplexMatrix a = reconstruct_operator(samples, grid, s, pattern_for(c, s));
  write_text(c.out, spin_operator_json(a, s));
  return 0;
}

int cmd_audit(const Config& c) {
  const HalfInt s = spin_of(c.two_s);
  AuditOptions opts;
  opts.trials = c.trials;
  opts.seed = c.seed;
  opts.negative_control = c.negative_control;
  const AuditReport r = audit_postulates(s, pattern_for(c, s), grid_for(c, s), opts);
  write_text(c.out, r.to_text());
  return r.pass ? 0 : kExitFail;
}

int cmd_contract_table(const Config& c) {
  if (c.two_s_list.empty()) throw UsageError("--two-s-list must not be empty");
  if (c.n_list.empty()) throw UsageError("--n-list must not be empty");
  std::ostringstream os;
  if (c.terms) {
    if (c.two_s_list.size() != 1 || c.n_list.size() != 1)
      throw UsageError("--terms needs exactly one value in --two-s-list and --n-list");
    const HalfInt s = spin_of(c.two_s_list[0]);
    write_term_table_csv(os, contraction_sum(s, c.n_list[0], extended_pattern_for(c, s)));
    write_text(c.out, os.str());
    return 0;
  }
  os << "two_s,n,sum,abs_error" << (c.integral_t2 ? ",integral_t2" : "") << "\n";
  for (int two_s : c.two_s_list) {
    const HalfInt s = spin_of(two_s);
    const SignPattern eps = extended_pattern_for(c, s);
    for (int n : c.n_list) {
      const TermTable t = contraction_sum(s, n, eps);
      os << fmt::format("{},{},{},{}", two_s, n, num(t.total), num(std::abs(t.total - 2.0)));
      if (c.integral_t2) os << "," << num((n % 2 ? -1.0 : 1.0) * laguerre_integral(n, 2.0));
      os << "\n";
    }
  }
  write_text(c.out, os.str());
  return 0;
}

int cmd_compare(const Config& c) {
  const Complex alpha(c.alpha_re, c.alpha_im);
  if (c.n_max < c.block) throw UsageError("--n-max must be at least --block");
  auto deviation = [&](HalfInt s) {
    const ComplexMatrix spin_block = contracted_kernel_block(s, alpha, c.block, pattern_for(c, s));
    const ComplexMatrix particle = particle_kernel(FockSpace(c.n_max), PhasePoint{alpha});
    return max_abs(spin_block - particle.topLeftCorner(c.block + 1, c.block + 1));
  };
  std::ostringstream os;
  if (!c.ladder.empty()) {
    if (!c.epsilon_mask.empty()) throw UsageError("--s-ladder compares the all-plus kernel; drop --epsilon-mask");
    os << "two_s,deviation\n";
    for (int two_s : c.ladder) os << two_s << "," << num(deviation(spin_of(two_s))) << "\n";
  } else {
    const HalfInt s = spin_of(c.two_s);
    os << "two_s = " << s.twice() << "\nalpha = " << num(alpha.real()) << " " << num(alpha.imag()) << "\nblock = " << c.block
       << "\ndeviation = " << num(deviation(s)) << "\n";
  }
  write_text(c.out, os.str());
  return 0;
}

int cmd_sweep(const Config& c) {
  const HalfInt base = spin_of(c.base_two_s);
  std::vector<HalfInt> ladder;
  for (int two_s : c.two_s_list) ladder.push_back(spin_of(two_s));
  const SweepReport r = epsilon_sweep(ladder, c.n_list, sweep_patterns(base, c.random_count, c.seed));
  if (c.format == "json") {
    write_text(c.out, sweep_report_json(r));
    return 0;
  }
  std::ostringstream os;
  os << "epsilon_mask,verdict";
  for (int n : c.n_list) os << ",final_distance_n" << n;
  os << "\n";
  for (const auto& e : r.entries) {
    os << e.base.mask() << "," << (e.converges ? "CONVERGES" : "NOT-CONVERGES");
    for (double d : e.distance.back()) os << "," << num(d);
    os << "\n";
  }
  write_text(c.out, os.str());
  return 0;
}

int cmd_acceptance(const Config&) {
  const AcceptanceReport r = run_acceptance_suite(&std::cout);
  std::cout << (r.all_pass() ? "acceptance: all criteria PASS\n" : "acceptance: FAILED\n");
  return r.all_pass() ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spin and particle Wigner kernels and their contraction"};
  app.require_subcommand(1);
  Config c;

  auto add_spin = [&](CLI::App* sub) {
    sub->add_option("--two-s", c.two_s, "twice the spin, 2s")->check(CLI::NonNegativeNumber);
    sub->add_option("--epsilon-mask", c.epsilon_mask, "2s bits, bit l-1 set means eps_l = -1 (default all plus)");
  };
  auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--n-theta", c.n_theta, "Gauss-Legendre nodes in theta (default 2s+2)");
    sub->add_option("--n-phi", c.n_phi, "uniform nodes in phi (default 4s+2)");
  };
  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", c.out, "output file (default stdout)"); };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };

  auto* cg = app.add_subcommand("cg", "Clebsch-Gordan coefficient <j1 m1; j2 m2 | J M>, exact and float");
  cg->add_option("args", c.cg_args, "j1 m1 j2 m2 J M (e.g. 1/2 -1/2 1 1 3/2 1/2)")->expected(6)->required();
  cg->add_flag("--strict", c.strict, "reject forbidden arguments instead of returning 0");
  add_out(cg);

  auto* kernel = app.add_subcommand("kernel", "spin Wigner kernel at a point of the sphere (JSON)");
  add_spin(kernel);
  kernel->add_option("--theta", c.theta, "polar angle");
  kernel->add_option("--phi", c.phi, "azimuth");
  kernel->add_option("--method", c.method, "multipole or rotation")->check(CLI::IsMember({"multipole", "rotation"}));
  add_out(kernel);

  auto* wigner = app.add_subcommand("wigner", "symbol of an operator: spin grid or particle phase plane");
  add_spin(wigner);
  add_grid(wigner);
  add_out(wigner);
  add_format(wigner);
  wigner->add_option("--operator", c.operator_path, "operator JSON (two_s or n_max)");
  wigner->add_option("--fock-state", c.fock_state, "particle: use |n><n|");
  wigner->add_option("--n-max", c.n_max, "Fock truncation for --fock-state");
  wigner->add_option("--q-min", c.q_min);
  wigner->add_option("--q-max", c.q_max);
  wigner->add_option("--p-min", c.p_min);
  wigner->add_option("--p-max", c.p_max);
  wigner->add_option("--n-q", c.n_q);
  wigner->add_option("--n-p", c.n_p);

  auto* reconstruct = app.add_subcommand("reconstruct", "operator from spin symbol samples (JSON)");
  add_spin(reconstruct);
  add_grid(reconstruct);
  add_out(reconstruct);
  reconstruct->add_option("--symbols", c.symbols_path, "CSV theta,phi,weight,re,im")->required();

  auto* audit = app.add_subcommand("audit", "check the kernel postulates; exit 1 on FAIL");
  add_spin(audit);
  add_grid(audit);
  add_out(audit);
  audit->add_option("--trials", c.trials, "random draws per check")->check(CLI::PositiveNumber);
  audit->add_option("--seed", c.seed, "RNG seed");
  audit->add_flag("--negative-control", c.negative_control, "use a kernel that must fail");

  auto* table = app.add_subcommand("contract-table", "S(s,n) and |S-2| per (s, n) (CSV)");
  table->add_option("--two-s-list", c.two_s_list, "values of 2s")->delimiter(',')->required();
  table->add_option("--n-list", c.n_list, "values of n")->delimiter(',')->required();
  table->add_option("--epsilon-mask", c.epsilon_mask, "base mask, extended periodically to each s");
  table->add_flag("--integral-t2", c.integral_t2, "add (-1)^n int L_n e^{-x/2} dx column");
  table->add_flag("--terms", c.terms, "per-l table for a single (s, n)");
  add_out(table);

  auto* compare = app.add_subcommand("compare", "contracted spin kernel block vs particle kernel");
  add_spin(compare);
  compare->add_option("--alpha-re", c.alpha_re);
  compare->add_option("--alpha-im", c.alpha_im);
  compare->add_option("--block", c.block, "compare |n>, n = 0 .. block")->check(CLI::NonNegativeNumber);
  compare->add_option("--n-max", c.n_max, "Fock truncation of the particle kernel");
  compare->add_option("--s-ladder", c.ladder, "values of 2s; emits two_s,deviation CSV")->delimiter(',');
  add_out(compare);

  auto* sweep = app.add_subcommand("sweep-eps", "convergence verdict per sign pattern");
  sweep->add_option("--base-two-s", c.base_two_s, "2s of the base patterns (exhaustive for <= 8)");
  c.two_s_list = {100, 200, 400, 800};
  c.n_list = {0, 1, 2, 3};
  sweep->add_option("--two-s-list", c.two_s_list, "ladder of 2s values")->delimiter(',');
  sweep->add_option("--n-list", c.n_list, "values of n")->delimiter(',');
  sweep->add_option("--random-count", c.random_count, "random patterns when 2s > 8");
  sweep->add_option("--seed", c.seed, "RNG seed for sampled patterns");
  add_format(sweep);
  add_out(sweep);

  auto* acceptance = app.add_subcommand("acceptance", "run every acceptance criterion");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  try {
    if (cg->parsed()) return cmd_cg(c);
    if (kernel->parsed()) return cmd_kernel(c);
    if (wigner->parsed()) return cmd_wigner(c);
    if (reconstruct->parsed()) return cmd_reconstruct(c);
    if (audit->parsed()) return cmd_audit(c);
    if (table->parsed()) return cmd_contract_table(c);
    if (compare->parsed()) return cmd_compare(c);
    if (sweep->parsed()) return cmd_sweep(c);
    if (acceptance->parsed()) return cmd_acceptance(c);
  } catch (const std::exception& e) {
    // usage, domain, precondition and convergence errors alike
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
