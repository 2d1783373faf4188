#pragma once

// Test-only helpers: random inputs and references that do not go through the
// library's eigensolver.

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "necklace/graph.hpp"

namespace testing {

using cd = std::complex<double>;

inline Eigen::MatrixXcd random_hermitian(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = cd(g(rng), g(rng));
  }
  return 0.5 * (a + a.adjoint());
}

/// Characteristic polynomial coefficients of a (monic, highest degree first)
/// by Faddeev-LeVerrier.
inline std::vector<cd> characteristic_polynomial(const Eigen::MatrixXcd& a) {
  const auto n = a.rows();
  std::vector<cd> c(static_cast<std::size_t>(n + 1));
  c[0] = 1.0;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    m = a * m + c[k - 1] * id;
    c[k] = -(a * m).trace() / static_cast<double>(k);
  }
  return c;
}

/// Real roots of a polynomial whose roots are all real, via Durand-Kerner.
inline std::vector<double> real_roots(const std::vector<cd>& coeff) {
  const std::size_t n = coeff.size() - 1;
  auto eval = [&](cd x) {
    cd v = 0.0;
    for (const auto& c : coeff) v = v * x + c;
    return v;
  };
  std::vector<cd> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = std::pow(cd(0.4, 0.9), static_cast<double>(i)) * 3.0;
  for (int iter = 0; iter < 2000; ++iter) {
    for (std::size_t i = 0; i < n; ++i) {
      cd denom = 1.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) denom *= z[i] - z[j];
      }
      z[i] -= eval(z[i]) / denom;
    }
  }
  std::vector<double> out;
  for (const auto& r : z) out.push_back(r.real());
  std::sort(out.begin(), out.end());
  return out;
}

inline double max_abs_diff(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

/// Sorted eigenvalues of a real symmetric matrix from a plain cyclic Jacobi
/// sweep, independent of Eigen's solver.
inline Eigen::VectorXd jacobi_eigenvalues(Eigen::MatrixXd a) {
  const auto n = a.rows();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    }
    if (off < 1e-30) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  Eigen::VectorXd d = a.diagonal();
  std::sort(d.begin(), d.end());
  return d;
}

/// A 4-vertex pearl that is neither a comb nor a path: triangle 1-2-3 with a
/// pendant 4 on vertex 3, linked through vertices 1 and 4.
inline necklace::Pearl kite_pearl() {
  return necklace::Pearl::custom(4, {{1, 2}, {1, 3}, {2, 3}, {3, 4}}, 1, 4);
}

}  // namespace testing
