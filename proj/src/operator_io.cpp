#include "phasecontract/operator_io.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "phasecontract/errors.hpp"

namespace phasecontract {

using nlohmann::json;

namespace {

json matrix_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string spin_operator_json(const ComplexMatrix& matrix, HalfInt s) {
  if (matrix.rows() != s.twice() + 1 || matrix.cols() != s.twice() + 1)
    throw DomainError("spin_operator_json: matrix size does not match 2s + 1");
  return json{{"two_s", s.twice()}, {"matrix", matrix_json(matrix)}}.dump() + "\n";
}

std::string fock_operator_json(const ComplexMatrix& matrix, int n_max) {
  if (matrix.rows() != n_max + 1 || matrix.cols() != n_max + 1)
    throw DomainError("fock_operator_json: matrix size does not match n_max + 1");
  return json{{"n_max", n_max}, {"matrix", matrix_json(matrix)}}.dump() + "\n";
}

OperatorFile parse_operator_json(const std::string& text) {
  OperatorFile f;
  try {
    const json doc = json::parse(text);
    int dim = -1;
    if (doc.contains("two_s")) {
      const int two_s = doc.at("two_s").get<int>();
      if (two_s < 0) throw DomainError("operator file: two_s must be non-negative");
      f.s = HalfInt::from_twice(two_s);
      dim = two_s + 1;
    } else if (doc.contains("n_max")) {
      f.n_max = doc.at("n_max").get<int>();
      if (*f.n_max < 0) throw DomainError("operator file: n_max must be non-negative");
      dim = *f.n_max + 1;
    } else {
      throw DomainError("operator file: needs \"two_s\" or \"n_max\"");
    }
    const json& rows = doc.at("matrix");
    if (!rows.is_array() || static_cast<int>(rows.size()) != dim)
      throw DomainError(fmt::format("operator file: expected {} rows", dim));
    f.matrix.resize(dim, dim);
    for (int i = 0; i < dim; ++i) {
      const json& row = rows[i];
      if (!row.is_array() || static_cast<int>(row.size()) != dim)
        throw DomainError(fmt::format("operator file: row {} must have {} entries", i, dim));
      for (int j = 0; j < dim; ++j) {
        const json& e = row[j];
        if (!e.is_array() || e.size() != 2) throw DomainError("operator file: entries are [re, im] pairs");
        f.matrix(i, j) = Complex(e[0].get<double>(), e[1].get<double>());
      }
    }
  } catch (const json::exception& e) {
    throw DomainError(std::string("operator file: ") + e.what());
  }
  return f;
}

OperatorFile read_operator_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open operator file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_operator_json(ss.str());
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write " + path);
  out << text;
}

void write_symbol_csv(std::ostream& out, const SphereGrid& grid, const std::vector<Complex>& samples) {
  if (samples.size() != grid.size()) throw DomainError("write_symbol_csv: sample count does not match the grid");
  out << "theta,phi,weight,re,im\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const SpherePoint p = grid.point(i);
    fmt::print(out, "{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", p.theta, p.phi, grid.weight(i), samples[i].real(),
               samples[i].imag());
  }
}

void write_wigner_csv(std::ostream& out, const std::vector<PhasePoint>& points, const std::vector<double>& w) {
  if (points.size() != w.size()) throw DomainError("write_wigner_csv: size mismatch");
  out << "q,p,w\n";
  for (std::size_t i = 0; i < points.size(); ++i) fmt::print(out, "{:.17g},{:.17g},{:.17g}\n", points[i].q(), points[i].p(), w[i]);
}

void write_term_table_csv(std::ostream& out, const TermTable& table) {
  out << "l,x_l,term,partial_sum\n";
  for (std::size_t l = 0; l < table.terms.size(); ++l)
    fmt::print(out, "{},{:.17g},{:.17g},{:.17g}\n", l, table.x[l], table.terms[l], table.partial_sums[l]);
}

std::vector<Complex> read_symbol_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open symbol file " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("theta,phi,weight,re,im", 0) != 0)
    throw DomainError("symbol file " + path + ": missing header theta,phi,weight,re,im");
  std::vector<Complex> out;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> cols;
    std::stringstream ss(line);
    std::string cell;
    try {
      while (std::getline(ss, cell, ',')) cols.push_back(std::stod(cell));
    } catch (const std::exception&) {
      throw DomainError(fmt::format("symbol file {}: bad number on line {}", path, lineno));
    }
    if (cols.size() < 5) throw DomainError(fmt::format("symbol file {}: line {} has fewer than 5 columns", path, lineno));
    out.emplace_back(cols[3], cols[4]);
  }
  return out;
}

std::string sweep_report_json(const SweepReport& report) {
  json doc;
  json s_list = json::array();
  for (HalfInt s : report.s_list) s_list.push_back(s.twice());
  doc["two_s_ladder"] = s_list;
  doc["n_list"] = report.n_list;
  doc["final_tolerance"] = SweepReport::kFinalTolerance;
  json entries = json::array();
  for (const auto& e : report.entries) {
    entries.push_back({{"base_two_s", e.base.s().twice()},
                       {"epsilon_mask", e.base.mask()},
                       {"verdict", e.converges ? "CONVERGES" : "NOT-CONVERGES"},
                       {"distance", e.distance}});
  }
  doc["patterns"] = entries;
  doc["converging_count"] = report.converging_count();
  return doc.dump(2) + "\n";
}

}  // namespace phasecontract
