#pragma once

#include <Eigen/Dense>

namespace necklace {

/// Ascending eigenvalues with unit eigenvectors in the matching columns.
/// Each column is phased so its largest-magnitude component (lowest index on
/// ties) is real and positive.
struct EigenDecomposition {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;
};

/// Dense Hermitian eigensolver. Input must be Hermitian to 1e-12 (relative to
/// its largest entry); it is symmetrised before solving. Throws invalid-matrix
/// or numerical-failure.
EigenDecomposition eigh(const Eigen::MatrixXcd& a);
EigenDecomposition eigh(const Eigen::MatrixXd& a);

/// Eigenvalues only, ascending.
Eigen::VectorXd eigvalsh(const Eigen::MatrixXcd& a);
Eigen::VectorXd eigvalsh(const Eigen::MatrixXd& a);

}  // namespace necklace
