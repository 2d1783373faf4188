#include "necklace/eig.hpp"

#include <cmath>

#include "necklace/error.hpp"

namespace necklace {
namespace {

constexpr double kHermitianTolerance = 1e-12;
constexpr double kPhaseTieTolerance = 1e-12;

Eigen::MatrixXcd checked_symmetrised(const Eigen::MatrixXcd& a) {
  if (a.rows() == 0 || a.rows() != a.cols()) {
    throw Error(ErrorKind::invalid_matrix, "matrix must be square and non-empty");
  }
  if (!a.allFinite()) throw Error(ErrorKind::invalid_matrix, "matrix has non-finite entries");
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  const double asym = (a - a.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermitianTolerance * scale) {
    throw Error(ErrorKind::invalid_matrix, "matrix is not Hermitian (max deviation " + std::to_string(asym) + ")");
  }
  return 0.5 * (a + a.adjoint());
}

void fix_phases(Eigen::MatrixXcd& v) {
  for (Eigen::Index c = 0; c < v.cols(); ++c) {
    auto col = v.col(c);
    const double biggest = col.cwiseAbs().maxCoeff();
    Eigen::Index pick = 0;
    for (Eigen::Index r = 0; r < col.size(); ++r) {
      if (std::abs(col(r)) >= biggest - kPhaseTieTolerance) {
        pick = r;
        break;
      }
    }
    const std::complex<double> z = col(pick);
    col *= std::conj(z) / std::abs(z);
    col(pick) = std::abs(col(pick));
    col.normalize();
  }
}

}  // namespace

EigenDecomposition eigh(const Eigen::MatrixXcd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(checked_symmetrised(a), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::numerical_failure, "Hermitian eigensolver did not converge");
  }
  EigenDecomposition out{solver.eigenvalues(), solver.eigenvectors()};
  fix_phases(out.vectors);
  return out;
}

EigenDecomposition eigh(const Eigen::MatrixXd& a) { return eigh(Eigen::MatrixXcd(a.cast<std::complex<double>>())); }

Eigen::VectorXd eigvalsh(const Eigen::MatrixXcd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(checked_symmetrised(a), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::numerical_failure, "Hermitian eigensolver did not converge");
  }
  return solver.eigenvalues();
}

Eigen::VectorXd eigvalsh(const Eigen::MatrixXd& a) {
  if (a.rows() == 0 || a.rows() != a.cols()) {
    throw Error(ErrorKind::invalid_matrix, "matrix must be square and non-empty");
  }
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if (!a.allFinite() || (a - a.transpose()).cwiseAbs().maxCoeff() > kHermitianTolerance * scale) {
    throw Error(ErrorKind::invalid_matrix, "matrix is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (a + a.transpose()), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::numerical_failure, "symmetric eigensolver did not converge");
  }
  return solver.eigenvalues();
}

}  // namespace necklace
