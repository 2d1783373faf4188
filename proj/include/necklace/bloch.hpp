#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "necklace/eig.hpp"
#include "necklace/graph.hpp"

namespace necklace {

/// Momentum 2*pi*k/K of sector k. Throws invalid-parameter unless 0 <= k < K.
double momentum(int k, int pearls);

/// Sector matrix Y = P + Q(p). Two roots: Q[in][out] = e^{-ip}, Q[out][in] = e^{ip}.
/// Single root: Q[root][root] = 2 cos p.
Eigen::MatrixXcd sector_matrix(const Pearl& pearl, double p);

struct SectorSpectrum {
  int k = 0;
  int pearls = 0;
  Eigen::VectorXd values;    // ascending, branch n = row index
  Eigen::MatrixXcd vectors;  // column n is y^(k,n) over pearl vertices 1..M

  double momentum() const { return necklace::momentum(k, pearls); }
};

SectorSpectrum sector_spectrum(const Pearl& pearl, int k, int pearls);

/// psi(j, m) = e^{i p_k j} y_m / sqrt(K) for j = 1..K, flattened like Necklace::index.
Eigen::VectorXcd lift_eigenvector(const Eigen::VectorXcd& y, int k, int pearls);

struct SpectrumEntry {
  int k = 0;
  int n = 0;
  double value = 0.0;
};

/// All K*M eigenpairs of a necklace, ordered by (k, n). Column i of vectors()
/// is the lifted eigenvector of entries()[i].
class FullSpectrum {
 public:
  FullSpectrum(Necklace necklace, std::vector<SectorSpectrum> sectors, bool with_vectors);

  const Necklace& necklace() const noexcept { return necklace_; }
  const std::vector<SectorSpectrum>& sectors() const noexcept { return sectors_; }
  const std::vector<SpectrumEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

  bool has_vectors() const noexcept { return has_vectors_; }
  /// Throws invalid-parameter when built without vectors.
  const Eigen::MatrixXcd& vectors() const;

  /// lambda_{k,n}
  double value(int k, int n) const { return sectors_[k].values(n); }

  /// All eigenvalues in (k, n) order.
  Eigen::VectorXd values() const;
  Eigen::VectorXd sorted_values() const;

 private:
  Necklace necklace_;
  std::vector<SectorSpectrum> sectors_;
  std::vector<SpectrumEntry> entries_;
  Eigen::MatrixXcd vectors_;
  bool has_vectors_;
};

/// Diagonalises every sector (in parallel) and optionally lifts the vectors.
FullSpectrum full_spectrum(const Necklace& necklace, bool with_vectors = true);

/// Closed-form eigenpair of a sector, vector in canonical pearl labeling.
struct ClosedFormPair {
  double value = 0.0;
  Eigen::VectorXcd vector;
};

/// (K,1)-comb sector k: lambda = cos p -/+ sqrt(1 + cos^2 p), vector
/// (lambda, 1)/sqrt(1 + lambda^2) over (base, tooth). Ascending order.
std::array<ClosedFormPair, 2> comb1_closed_form(int k, int pearls);

/// (K,2)-comb sector k: lambda in {-s, 0, s}, s = sqrt(3 + 2 cos p), ascending.
/// Canonical labeling is (base, ring, tooth); relative to the (base, tooth,
/// ring) labeling used in the literature the last two coordinates swap.
///   y0  = (0, -1, 1 + e^{-ip}) / s
///   y+- = (+-s, 1 + e^{ip}, 1) / (sqrt(2) s)
std::array<ClosedFormPair, 3> comb2_closed_form(int k, int pearls);

}  // namespace necklace
