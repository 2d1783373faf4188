#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "necklace/eig.hpp"
#include "necklace/graph.hpp"
#include "necklace/walk.hpp"

namespace necklace::oracle {

/// Full N x N diagonalisation with no use of the pearl structure.
EigenDecomposition brute_spectrum(const Eigen::MatrixXd& hamiltonian);

/// exp(a) by scaling and squaring of a truncated Taylor series.
Eigen::MatrixXcd matrix_exponential(const Eigen::MatrixXcd& a);

/// |exp(-iHt) start|^2.
Distribution evolve_matrix_exponential(const Eigen::MatrixXd& hamiltonian, const Eigen::VectorXcd& start, double t);

/// Trapezoidal average of |exp(-iHt) start|^2 over [0, T] on `steps` intervals.
Distribution quadrature_time_average(const Eigen::MatrixXd& hamiltonian, const Eigen::VectorXcd& start,
                                     double horizon, int steps);

struct Check {
  std::string name;
  double deviation = 0.0;
  double tolerance = 0.0;
  bool passed() const { return deviation <= tolerance; }
};

struct Report {
  std::vector<Check> checks;
  bool passed() const;
  nlohmann::json to_json() const;
};

/// Every brute-force comparison for one necklace and vertex start (1-based).
/// Needs K*M <= 2000. tolerance <= 0 picks the default degeneracy tolerance.
Report run_checks(const Necklace& necklace, int start_pearl, int start_vertex, double tolerance);

}  // namespace necklace::oracle
