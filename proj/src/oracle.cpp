#include "necklace/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "necklace/bloch.hpp"
#include "necklace/comb1.hpp"
#include "necklace/error.hpp"

namespace necklace::oracle {

using cd = std::complex<double>;

EigenDecomposition brute_spectrum(const Eigen::MatrixXd& hamiltonian) {
  if (hamiltonian.rows() > 5000) throw Error(ErrorKind::invalid_parameter, "brute spectrum limited to N <= 5000");
  return eigh(hamiltonian);
}

Eigen::MatrixXcd matrix_exponential(const Eigen::MatrixXcd& a) {
  const auto n = a.rows();
  const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Eigen::MatrixXcd scaled = a / std::ldexp(1.0, squarings);

  Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(n, n);
  bool converged = false;
  for (int order = 1; order <= 40; ++order) {
    term = (term * scaled) / static_cast<double>(order);
    result += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18) {
      converged = true;
      break;
    }
  }
  if (!converged) throw Error(ErrorKind::numerical_failure, "Taylor series for exp did not converge");
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

namespace {

std::vector<double> squared_moduli(const Eigen::VectorXcd& v) {
  std::vector<double> p(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) p[i] = std::norm(v(i));
  return p;
}

}  // namespace

Distribution evolve_matrix_exponential(const Eigen::MatrixXd& hamiltonian, const Eigen::VectorXcd& start, double t) {
  if (hamiltonian.rows() > 2000) throw Error(ErrorKind::invalid_parameter, "matrix exponential oracle limited to N <= 2000");
  if (t < 0.0) throw Error(ErrorKind::invalid_parameter, "time must be non-negative");
  const Eigen::MatrixXcd generator = cd(0.0, -t) * hamiltonian.cast<cd>();
  return Distribution::from_raw(squared_moduli(matrix_exponential(generator) * start));
}

Distribution quadrature_time_average(const Eigen::MatrixXd& hamiltonian, const Eigen::VectorXcd& start,
                                     double horizon, int steps) {
  if (steps < 100) throw Error(ErrorKind::invalid_parameter, "quadrature needs at least 100 steps");
  if (!(horizon > 0.0)) throw Error(ErrorKind::invalid_parameter, "averaging horizon T must be positive");
  if (hamiltonian.rows() > 2000) throw Error(ErrorKind::invalid_parameter, "quadrature oracle limited to N <= 2000");
  const double h = horizon / steps;
  const Eigen::MatrixXcd step = matrix_exponential(cd(0.0, -h) * hamiltonian.cast<cd>());
  Eigen::VectorXcd state = start;
  Eigen::VectorXd acc = 0.5 * state.cwiseAbs2();
  for (int i = 1; i <= steps; ++i) {
    state = step * state;
    acc += (i == steps ? 0.5 : 1.0) * state.cwiseAbs2();
  }
  acc /= static_cast<double>(steps);
  return Distribution::from_raw(std::vector<double>(acc.data(), acc.data() + acc.size()));
}

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed(); });
}

nlohmann::json Report::to_json() const {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& c : checks) {
    list.push_back({{"name", c.name}, {"max_deviation", c.deviation}, {"tolerance", c.tolerance}, {"passed", c.passed()}});
  }
  return {{"passed", passed()}, {"checks", list}};
}

Report run_checks(const Necklace& necklace, int start_pearl, int start_vertex, double tolerance) {
  if (necklace.vertex_count() > 2000) throw Error(ErrorKind::invalid_parameter, "oracle checks limited to K*M <= 2000");
  Report report;
  const Eigen::MatrixXd h = assemble_hamiltonian(necklace);
  const FullSpectrum spectrum = full_spectrum(necklace);
  if (tolerance <= 0.0) tolerance = default_degeneracy_tolerance(spectrum);
  const Eigen::MatrixXcd& psi = spectrum.vectors();
  const Eigen::VectorXd lambda = spectrum.values();
  const int dim = necklace.vertex_count();

  const Eigen::VectorXd brute = brute_spectrum(h).values;
  report.checks.push_back({"sector_union_spectrum", (spectrum.sorted_values() - brute).cwiseAbs().maxCoeff(), 1e-9});

  const Eigen::MatrixXcd hpsi = h.cast<cd>() * psi;
  double residual = 0.0;
  for (int a = 0; a < dim; ++a) residual = std::max(residual, (hpsi.col(a) - lambda(a) * psi.col(a)).norm());
  report.checks.push_back({"lifted_residual", residual, 1e-9});

  const Eigen::MatrixXcd gram = psi.adjoint() * psi;
  report.checks.push_back({"basis_orthonormality",
                           (gram - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff(), 1e-9});

  Eigen::MatrixXcd projected = psi.adjoint() * hpsi;
  projected.diagonal() -= lambda.cast<cd>();
  report.checks.push_back({"diagonalizes_hamiltonian", projected.cwiseAbs().maxCoeff(), 1e-9});

  double pairing = 0.0;
  const int pearls = necklace.pearls();
  for (int k = 1; k < pearls; ++k) {
    for (int n = 0; n < necklace.pearl_size(); ++n) {
      pairing = std::max(pairing, std::abs(spectrum.value(k, n) - spectrum.value(pearls - k, n)));
    }
  }
  report.checks.push_back({"conjugate_sector_pairing", pairing, 1e-10});

  const InitialState start = InitialState::vertex(necklace, start_pearl, start_vertex);
  double evolution = 0.0;
  for (double t : {0.5, 1.7, 5.0}) {
    const Distribution exact = probability_at_time(spectrum, start, t);
    const Distribution reference = evolve_matrix_exponential(h, start.amplitudes(), t);
    for (int x = 0; x < dim; ++x) evolution = std::max(evolution, std::abs(exact[x] - reference[x]));
  }
  report.checks.push_back({"evolution_vs_matrix_exponential", evolution, 1e-9});

  // h = 1e-3 keeps the trapezoid error near 1e-7
  const double horizon = 5.0;
  const int steps = 5000;
  const Distribution averaged = time_averaged(spectrum, start, horizon, tolerance);
  const Distribution quadrature = quadrature_time_average(h, start.amplitudes(), horizon, steps);
  double average_dev = 0.0;
  for (int x = 0; x < dim; ++x) average_dev = std::max(average_dev, std::abs(averaged[x] - quadrature[x]));
  report.checks.push_back({"time_average_vs_quadrature", average_dev, 1e-5});

  const Distribution limit = limiting_distribution(spectrum, start, tolerance).distribution;
  const int comb_d = necklace.pearl().comb_spacing();
  if (comb_d == 0) {
    double dev = 0.0;
    for (int x = 1; x <= pearls; ++x) {
      dev = std::max(dev, std::abs(limit[necklace.index(x, 1)] - cycle_limiting(pearls, x, start_pearl)));
    }
    report.checks.push_back({"cycle_limiting_closed_form", dev, 1e-9});
  } else if (comb_d == 1) {
    const Site from = start_vertex == 1 ? Site::base : Site::tooth;
    double dev = 0.0;
    for (int x = 1; x <= pearls; ++x) {
      dev = std::max(dev, std::abs(limit[necklace.index(x, 1)] - comb1_limiting(pearls, from, Site::base, x, start_pearl)));
      dev = std::max(dev, std::abs(limit[necklace.index(x, 2)] - comb1_limiting(pearls, from, Site::tooth, x, start_pearl)));
    }
    report.checks.push_back({"comb1_limiting_closed_form", dev, 1e-9});
  }
  return report;
}

}  // namespace necklace::oracle
