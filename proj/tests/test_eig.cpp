#include <doctest.h>

#include <random>

#include "necklace/eig.hpp"
#include "necklace/error.hpp"
#include "support.hpp"

using namespace necklace;
using testing::cd;

namespace {

void check_invariants(const Eigen::MatrixXcd& a, const EigenDecomposition& dec) {
  const double fro = a.norm();
  const auto n = a.rows();
  for (Eigen::Index c = 0; c < n; ++c) {
    const double residual = (a * dec.vectors.col(c) - dec.values(c) * dec.vectors.col(c)).norm();
    CHECK(residual <= 1e-10 * fro);
    if (c > 0) CHECK(dec.values(c - 1) <= dec.values(c));
  }
  const Eigen::MatrixXcd gram = dec.vectors.adjoint() * dec.vectors;
  CHECK((gram - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK(std::abs(dec.values.sum() - a.trace().real()) <= 1e-10 * fro);
  CHECK(std::abs(dec.values.squaredNorm() - fro * fro) <= 1e-9 * fro * fro);
}

}  // namespace

TEST_CASE("Pauli X") {
  Eigen::MatrixXd x(2, 2);
  x << 0, 1, 1, 0;
  const auto dec = eigh(x);
  CHECK(dec.values(0) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(dec.values(1) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("zero-momentum sector of the (K,1) comb") {
  Eigen::MatrixXd y(2, 2);
  y << 2, 1, 1, 0;
  const auto dec = eigh(y);
  CHECK(std::abs(dec.values(0) - (1.0 - std::sqrt(2.0))) < 1e-14);
  CHECK(std::abs(dec.values(1) - (1.0 + std::sqrt(2.0))) < 1e-14);
}

TEST_CASE("random 6x6 Hermitian, seed 42") {
  std::mt19937_64 rng(42);
  const Eigen::MatrixXcd a = testing::random_hermitian(6, rng);
  check_invariants(a, eigh(a));
}

TEST_CASE("eigenvalues agree with characteristic-polynomial roots up to dimension 4") {
  std::mt19937_64 rng(42);
  for (int n = 1; n <= 4; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      const Eigen::MatrixXcd a = testing::random_hermitian(n, rng);
      const auto roots = testing::real_roots(testing::characteristic_polynomial(a));
      const auto dec = eigh(a);
      for (int i = 0; i < n; ++i) CHECK(std::abs(dec.values(i) - roots[i]) < 1e-9);
    }
  }
}

TEST_CASE("invariants across sizes") {
  std::mt19937_64 rng(3);
  for (int n : {1, 2, 5, 17, 40}) {
    const Eigen::MatrixXcd a = testing::random_hermitian(n, rng);
    check_invariants(a, eigh(a));
  }
}

TEST_CASE("permutation similarity keeps the eigenvalues") {
  std::mt19937_64 rng(11);
  const Eigen::MatrixXcd a = testing::random_hermitian(8, rng);
  Eigen::PermutationMatrix<Eigen::Dynamic> perm(8);
  perm.setIdentity();
  std::shuffle(perm.indices().data(), perm.indices().data() + 8, rng);
  const Eigen::MatrixXcd b = perm * a * perm.transpose();
  CHECK(testing::max_abs_diff(eigh(a).values, eigh(b).values) <= 1e-10);
}

TEST_CASE("phase convention: largest component is real and positive") {
  std::mt19937_64 rng(5);
  const Eigen::MatrixXcd a = testing::random_hermitian(7, rng);
  const auto dec = eigh(a);
  for (Eigen::Index c = 0; c < 7; ++c) {
    Eigen::Index pick = 0;
    dec.vectors.col(c).cwiseAbs().maxCoeff(&pick);
    CHECK(dec.vectors(pick, c).imag() == 0.0);
    CHECK(dec.vectors(pick, c).real() > 0.0);
  }
  // ties go to the lowest index: (1,1)/sqrt2 and (1,-1)/sqrt2
  Eigen::MatrixXd x(2, 2);
  x << 0, 1, 1, 0;
  const auto px = eigh(x);
  CHECK(px.vectors(0, 0).real() > 0.0);
  CHECK(px.vectors(0, 1).real() > 0.0);
  CHECK(px.vectors(1, 0).real() < 0.0);
}

TEST_CASE("output is deterministic") {
  std::mt19937_64 rng(9);
  const Eigen::MatrixXcd a = testing::random_hermitian(12, rng);
  const auto d1 = eigh(a);
  const auto d2 = eigh(a);
  CHECK(d1.values == d2.values);
  CHECK(d1.vectors == d2.vectors);
}

TEST_CASE("Hermiticity is checked") {
  Eigen::MatrixXcd a(2, 2);
  a << 0, 1, 2, 0;
  try {
    eigh(a);
    FAIL("expected invalid-matrix");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::invalid_matrix);
  }
  Eigen::MatrixXcd nearly(2, 2);
  nearly << 0, 1, cd(1.0 + 1e-14, 0.0), 0;
  CHECK(eigh(nearly).values(1) == doctest::Approx(1.0));

  Eigen::MatrixXcd imaginary_diagonal(1, 1);
  imaginary_diagonal << cd(0.0, 1.0);
  CHECK_THROWS_AS(eigh(imaginary_diagonal), Error);
  CHECK_THROWS_AS(eigh(Eigen::MatrixXcd(2, 3)), Error);
  CHECK_THROWS_AS(eigvalsh(Eigen::MatrixXd(0, 0)), Error);
}

TEST_CASE("real and complex paths agree") {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> g;
  Eigen::MatrixXd a(9, 9);
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) a(i, j) = g(rng);
  a = (0.5 * (a + a.transpose())).eval();
  CHECK(testing::max_abs_diff(eigvalsh(a), eigh(a).values) < 1e-12);
  CHECK(testing::max_abs_diff(eigvalsh(Eigen::MatrixXcd(a.cast<cd>())), testing::jacobi_eigenvalues(a)) < 1e-12);
}
