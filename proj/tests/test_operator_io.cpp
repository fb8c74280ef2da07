#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "phasecontract/contraction.hpp"
#include "phasecontract/errors.hpp"
#include "phasecontract/operator_io.hpp"
#include "phasecontract/spin_kernel.hpp"

using namespace phasecontract;

namespace {

ComplexMatrix random_matrix(int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  ComplexMatrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = Complex(g(rng), g(rng) * 1e-7);
  return m;
}

}  // namespace

TEST(OperatorJson, SpinRoundTripIsBitExact) {
  const HalfInt s = HalfInt::from_twice(5);
  const ComplexMatrix m = random_matrix(6, 1);
  const auto f = parse_operator_json(spin_operator_json(m, s));
  ASSERT_TRUE(f.s.has_value());
  EXPECT_FALSE(f.n_max.has_value());
  EXPECT_EQ(*f.s, s);
  EXPECT_EQ(f.matrix, m);
}

TEST(OperatorJson, FockRoundTripIsBitExact) {
  const ComplexMatrix m = random_matrix(9, 2);
  const auto f = parse_operator_json(fock_operator_json(m, 8));
  ASSERT_TRUE(f.n_max.has_value());
  EXPECT_EQ(*f.n_max, 8);
  EXPECT_EQ(f.matrix, m);
  EXPECT_THROW(fock_operator_json(m, 7), DomainError);
  EXPECT_THROW(spin_operator_json(m, HalfInt::from_twice(3)), DomainError);
}

TEST(OperatorJson, MalformedInputIsRejected) {
  EXPECT_THROW(parse_operator_json("not json"), DomainError);
  EXPECT_THROW(parse_operator_json(R"({"matrix": [[[1,0]]]})"), DomainError);
  EXPECT_THROW(parse_operator_json(R"({"two_s": 1, "matrix": [[[1,0]]]})"), DomainError);
  EXPECT_THROW(parse_operator_json(R"({"two_s": 0, "matrix": [[1]]})"), DomainError);
  EXPECT_THROW(parse_operator_json(R"({"two_s": -1, "matrix": []})"), DomainError);
  EXPECT_THROW(parse_operator_json(R"({"n_max": 1, "matrix": [[[1,0],[0,0]],[[0,0]]]})"), DomainError);
  EXPECT_THROW(parse_operator_json(R"({"two_s": 0, "matrix": [[["a",0]]]})"), DomainError);
  EXPECT_NO_THROW(parse_operator_json(R"({"two_s": 0, "matrix": [[[1,0]]]})"));
  EXPECT_THROW(read_operator_file("/nonexistent/op.json"), DomainError);
}

TEST(SymbolCsv, RoundTripThroughFile) {
  const HalfInt s = HalfInt::from_twice(2);
  const auto grid = SphereGrid::for_spin(s);
  const SpinKernelFamily fam(s, SignPattern::all_plus(s));
  const auto samples = sample_symbol(random_matrix(3, 4), fam, grid);
  const auto path = std::filesystem::temp_directory_path() / "phasecontract_symbols_test.csv";
  {
    std::ofstream out(path);
    write_symbol_csv(out, grid, samples);
  }
  const auto back = read_symbol_csv(path.string());
  std::filesystem::remove(path);
  ASSERT_EQ(back.size(), samples.size());
  for (std::size_t i = 0; i < back.size(); ++i) EXPECT_EQ(back[i], samples[i]);

  std::ostringstream bad;
  EXPECT_THROW(write_symbol_csv(bad, grid, {}), DomainError);
}

TEST(SymbolCsv, BadFilesAreRejected) {
  const auto path = std::filesystem::temp_directory_path() / "phasecontract_bad_symbols.csv";
  std::ofstream(path) << "x,y\n1,2\n";
  EXPECT_THROW(read_symbol_csv(path.string()), DomainError);
  std::ofstream(path) << "theta,phi,weight,re,im\n1,2,3\n";
  EXPECT_THROW(read_symbol_csv(path.string()), DomainError);
  std::ofstream(path) << "theta,phi,weight,re,im\n1,2,3,abc,0\n";
  EXPECT_THROW(read_symbol_csv(path.string()), DomainError);
  std::filesystem::remove(path);
}

TEST(Csv, WignerAndTermTables) {
  std::ostringstream w;
  write_wigner_csv(w, {PhasePoint::from_qp(1.0, 2.0)}, {0.5});
  EXPECT_EQ(w.str().substr(0, 6), "q,p,w\n");
  EXPECT_NE(w.str().find(",0.5"), std::string::npos);

  const HalfInt s = HalfInt::from_twice(20);
  const auto t = contraction_sum(s, 1, SignPattern::all_plus(s));
  std::ostringstream os;
  write_term_table_csv(os, t);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "l,x_l,term,partial_sum");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  EXPECT_EQ(rows, 21);
}

TEST(SweepJson, Structure) {
  const auto r = epsilon_sweep({HalfInt::from_int(50), HalfInt::from_int(100)}, {0, 1}, sweep_patterns(HalfInt::from_twice(2)));
  const auto j = nlohmann::json::parse(sweep_report_json(r));
  EXPECT_EQ(j["two_s_ladder"], nlohmann::json::array({100, 200}));
  EXPECT_EQ(j["n_list"], nlohmann::json::array({0, 1}));
  EXPECT_EQ(j["final_tolerance"], 0.05);
  ASSERT_EQ(j["patterns"].size(), 4u);
  EXPECT_EQ(j["patterns"][0]["epsilon_mask"], "00");
  EXPECT_EQ(j["patterns"][0]["base_two_s"], 2);
  EXPECT_EQ(j["converging_count"], r.converging_count());
}
