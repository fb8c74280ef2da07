#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "phasecontract/contraction.hpp"
#include "phasecontract/half_int.hpp"
#include "phasecontract/linalg.hpp"
#include "phasecontract/particle_kernel.hpp"
#include "phasecontract/sphere_grid.hpp"

namespace phasecontract {

// Operator files:
//   {"two_s": 3, "matrix": [[[re, im], ...], ...]}   spin operators
//   {"n_max": 10, "matrix": ...}                      Fock-space operators
// Rows are in library basis order (index i <-> m = s - i, or Fock n).

struct OperatorFile {
  std::optional<HalfInt> s;
  std::optional<int> n_max;
  ComplexMatrix matrix;
};

std::string spin_operator_json(const ComplexMatrix& matrix, HalfInt s);
std::string fock_operator_json(const ComplexMatrix& matrix, int n_max);

/// Throws DomainError on malformed input or a size that does not match the
/// declared two_s / n_max.
OperatorFile parse_operator_json(const std::string& text);
OperatorFile read_operator_file(const std::string& path);

/// Writes `text` to `path`, or to stdout when path is empty or "-".
void write_text(const std::string& path, const std::string& text);

// CSV writers. Headers are fixed; values use 17 significant digits.
void write_symbol_csv(std::ostream& out, const SphereGrid& grid, const std::vector<Complex>& samples);
void write_wigner_csv(std::ostream& out, const std::vector<PhasePoint>& points, const std::vector<double>& w);
void write_term_table_csv(std::ostream& out, const TermTable& table);

/// Reads back a symbol CSV (theta,phi,weight,re,im) as complex samples in
/// row order.
std::vector<Complex> read_symbol_csv(const std::string& path);

std::string sweep_report_json(const SweepReport& report);

}  // namespace phasecontract
