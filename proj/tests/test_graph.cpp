#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>

#include "necklace/error.hpp"
#include "necklace/graph.hpp"
#include "support.hpp"

using namespace necklace;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::numerical_failure;
}

std::string message_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("comb pearls follow the path-plus-tooth rule") {
  const Pearl d1 = Pearl::comb(1);
  CHECK(d1.size() == 2);
  CHECK(d1.edges() == std::vector<Edge>{{1, 2}});
  CHECK(d1.root_in() == 1);
  CHECK(d1.root_out() == 1);
  CHECK(d1.single_root());

  const Pearl d2 = Pearl::comb(2);
  CHECK(d2.size() == 3);
  CHECK(d2.edges() == std::vector<Edge>{{1, 2}, {1, 3}});
  CHECK(d2.root_in() == 1);
  CHECK(d2.root_out() == 2);
  CHECK_FALSE(d2.single_root());

  const Pearl d3 = Pearl::comb(3);
  CHECK(d3.size() == 4);
  CHECK(d3.edges() == std::vector<Edge>{{1, 2}, {2, 3}, {1, 4}});
  CHECK(d3.root_in() == 1);
  CHECK(d3.root_out() == 3);

  CHECK(kind_of([] { Pearl::comb(0); }) == ErrorKind::invalid_parameter);
}

TEST_CASE("cycle pearl assembles into the K-cycle") {
  const Pearl p = Pearl::cycle();
  CHECK(p.size() == 1);
  CHECK(p.edges().empty());
  CHECK(p.single_root());

  const Eigen::MatrixXd tri = assemble_hamiltonian(Necklace(p, 3));
  CHECK(tri == (Eigen::MatrixXd::Ones(3, 3) - Eigen::MatrixXd::Identity(3, 3)));

  const Eigen::MatrixXd sq = assemble_hamiltonian(Necklace(p, 4));
  CHECK((sq.rowwise().sum().array() == 2.0).all());
  CHECK(sq(0, 2) == 0.0);

  const Eigen::MatrixXd five = assemble_hamiltonian(Necklace(p, 5));
  CHECK((five.rowwise().sum().array() == 2.0).all());
}

TEST_CASE("custom pearls are validated") {
  const Pearl c = Pearl::custom(2, {{1, 2}}, 1, 1);
  CHECK(c.adjacency() == Pearl::comb(1).adjacency());
  CHECK(c.single_root());

  const Pearl one = Pearl::custom(1, {}, 1, 1);
  CHECK(one.size() == 1);

  CHECK(kind_of([] { Pearl::custom(3, {{1, 1}}, 1, 3); }) == ErrorKind::invalid_pearl);
  CHECK(message_of([] { Pearl::custom(3, {{1, 1}}, 1, 3); }).find("{1,1}") != std::string::npos);
  CHECK(message_of([] { Pearl::custom(3, {{1, 1}}, 1, 3); }).find("self-loop") != std::string::npos);
  CHECK(message_of([] { Pearl::custom(3, {{1, 4}}, 1, 3); }).find("out-of-range") != std::string::npos);
  CHECK(message_of([] { Pearl::custom(3, {{1, 2}, {2, 1}}, 1, 3); }).find("duplicate") != std::string::npos);
  CHECK(kind_of([] { Pearl::custom(3, {{1, 2}}, 0, 3); }) == ErrorKind::invalid_pearl);
  CHECK(kind_of([] { Pearl::custom(3, {{1, 2}}, 1, 4); }) == ErrorKind::invalid_pearl);
}

TEST_CASE("necklaces need at least three pearls") {
  CHECK(kind_of([] { Necklace(Pearl::comb(2), 2); }) == ErrorKind::invalid_parameter);
  CHECK(kind_of([] { Necklace(Pearl::cycle(), 1); }) == ErrorKind::invalid_parameter);
  const Necklace n(Pearl::comb(2), 4);
  CHECK(n.vertex_count() == 12);
  CHECK(n.index(1, 1) == 0);
  CHECK(n.index(2, 3) == 5);
  CHECK(n.index(4, 3) == 11);
  CHECK(kind_of([&] { n.index(5, 1); }) == ErrorKind::invalid_parameter);
}

TEST_CASE("(K,1) comb with K=3: bases have degree 3, teeth degree 1") {
  const Eigen::MatrixXd h = assemble_hamiltonian(Necklace(Pearl::comb(1), 3));
  REQUIRE(h.rows() == 6);
  for (int j = 0; j < 3; ++j) {
    CHECK(h.row(2 * j).sum() == 3.0);
    CHECK(h.row(2 * j + 1).sum() == 1.0);
  }
}

TEST_CASE("comb d=2, K=3 spectrum is the union of the sector spectra") {
  // K=2 is outside the supported range, the smallest valid ring is used
  const Necklace n(Pearl::comb(2), 3);
  const Eigen::MatrixXd h = assemble_hamiltonian(n);
  const Eigen::VectorXd brute = testing::jacobi_eigenvalues(h);
  std::vector<double> expected;
  for (int k = 0; k < 3; ++k) {
    const double c = std::cos(2.0 * M_PI * k / 3.0);
    expected.push_back(0.0);
    expected.push_back(std::sqrt(3.0 + 2.0 * c));
    expected.push_back(-std::sqrt(3.0 + 2.0 * c));
  }
  std::sort(expected.begin(), expected.end());
  for (int i = 0; i < 9; ++i) CHECK(brute(i) == doctest::Approx(expected[i]).epsilon(1e-12));
}

TEST_CASE("assembled Hamiltonians are symmetric 0/1 with the expected edge count") {
  std::vector<Pearl> pearls = {Pearl::cycle(), Pearl::comb(1), Pearl::comb(2), Pearl::comb(5), testing::kite_pearl()};
  for (const auto& p : pearls) {
    for (int k : {3, 4, 7, 10}) {
      const Eigen::MatrixXd h = assemble_hamiltonian(Necklace(p, k));
      CHECK(h == h.transpose());
      CHECK(h.diagonal().isZero());
      CHECK(((h.array() == 0.0) || (h.array() == 1.0)).all());
      double upper = 0.0;
      for (Eigen::Index i = 0; i < h.rows(); ++i) upper += h.row(i).tail(h.cols() - i - 1).sum();
      CHECK(upper == static_cast<double>(k * p.edges().size() + k));
    }
  }
}

TEST_CASE("relabeling a pearl leaves the necklace spectrum unchanged") {
  std::mt19937_64 rng(7);
  const Pearl base = testing::kite_pearl();
  const Eigen::VectorXd reference = testing::jacobi_eigenvalues(assemble_hamiltonian(Necklace(base, 6)));
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<int> perm(4);
    std::iota(perm.begin(), perm.end(), 1);
    std::shuffle(perm.begin(), perm.end(), rng);
    const Pearl moved = base.relabeled(perm);
    CHECK(moved.root_in() == perm[0]);
    const Eigen::VectorXd spec = testing::jacobi_eigenvalues(assemble_hamiltonian(Necklace(moved, 6)));
    CHECK(testing::max_abs_diff(spec, reference) < 1e-12);
  }

  // the (base, tooth, ring) labeling of the d=2 comb is a relabeling of the canonical one
  const Pearl literature = Pearl::custom(3, {{1, 2}, {1, 3}}, 1, 3);
  for (int k : {3, 6, 9}) {
    const Eigen::VectorXd a = testing::jacobi_eigenvalues(assemble_hamiltonian(Necklace(literature, k)));
    const Eigen::VectorXd b = testing::jacobi_eigenvalues(assemble_hamiltonian(Necklace(Pearl::comb(2), k)));
    CHECK(testing::max_abs_diff(a, b) < 1e-12);
  }
}

TEST_CASE("pearl JSON uses 0-based vertices") {
  const Pearl p = testing::kite_pearl();
  const nlohmann::json j = pearl_to_json(p);
  CHECK(j.at("root_in") == 0);
  CHECK(j.at("root_out") == 3);
  const Pearl back = pearl_from_json(j);
  CHECK(back.adjacency() == p.adjacency());
  CHECK(back.root_in() == p.root_in());
  CHECK(back.root_out() == p.root_out());

  const auto bad = nlohmann::json::parse(R"({"m": 3, "edges": [[0,0]], "root_in": 0, "root_out": 2})");
  CHECK(kind_of([&] { pearl_from_json(bad); }) == ErrorKind::invalid_pearl);
  CHECK(message_of([&] { pearl_from_json(bad); }).find("[0,0]") != std::string::npos);
  CHECK(kind_of([] { pearl_from_json(nlohmann::json::parse(R"({"m": 3})")); }) == ErrorKind::invalid_pearl);
  CHECK(kind_of([] {
          pearl_from_json(nlohmann::json::parse(R"({"m": 2, "edges": [[0,1]], "root_in": 0, "root_out": 2})"));
        }) == ErrorKind::invalid_pearl);
}

TEST_CASE("pearl files") {
  const std::string path = "test_graph_pearl.json";
  {
    std::ofstream f(path);
    f << R"({"m": 2, "edges": [[0, 1]], "root_in": 0, "root_out": 0})";
  }
  CHECK(load_pearl_file(path).adjacency() == Pearl::comb(1).adjacency());
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_pearl_file("does/not/exist.json"), std::ios_base::failure);
}
