#include "necklace/bloch.hpp"

#include <cmath>
#include <complex>
#include <algorithm>
#include <numbers>

#include "necklace/error.hpp"
#include "necklace/parallel.hpp"

namespace necklace {

using cd = std::complex<double>;

double momentum(int k, int pearls) {
  if (pearls < 1 || k < 0 || k >= pearls) {
    throw Error(ErrorKind::invalid_parameter,
                "momentum index " + std::to_string(k) + " outside [0, " + std::to_string(pearls) + ")");
  }
  return 2.0 * std::numbers::pi * k / pearls;
}

Eigen::MatrixXcd sector_matrix(const Pearl& pearl, double p) {
  Eigen::MatrixXcd y = pearl.adjacency().cast<cd>();
  const int in = pearl.root_in() - 1;
  const int out = pearl.root_out() - 1;
  if (pearl.single_root()) {
    y(in, in) += 2.0 * std::cos(p);
  } else {
    y(in, out) += std::polar(1.0, -p);
    y(out, in) += std::polar(1.0, p);
  }
  return y;
}

SectorSpectrum sector_spectrum(const Pearl& pearl, int k, int pearls) {
  auto dec = eigh(sector_matrix(pearl, momentum(k, pearls)));
  return SectorSpectrum{k, pearls, std::move(dec.values), std::move(dec.vectors)};
}

Eigen::VectorXcd lift_eigenvector(const Eigen::VectorXcd& y, int k, int pearls) {
  if (pearls < 1 || k < 0 || k >= pearls) {
    throw Error(ErrorKind::invalid_parameter, "momentum index " + std::to_string(k) + " out of range");
  }
  const auto m = y.size();
  const double norm = 1.0 / std::sqrt(static_cast<double>(pearls));
  Eigen::VectorXcd psi(m * pearls);
  for (int j = 1; j <= pearls; ++j) {
    // reduce j*k mod K before forming the angle so large K stays exact
    const double angle = 2.0 * std::numbers::pi * static_cast<double>((static_cast<long long>(j) * k) % pearls) / pearls;
    psi.segment((j - 1) * m, m) = std::polar(norm, angle) * y;
  }
  return psi;
}

FullSpectrum::FullSpectrum(Necklace necklace, std::vector<SectorSpectrum> sectors, bool with_vectors)
    : necklace_(std::move(necklace)), sectors_(std::move(sectors)), has_vectors_(with_vectors) {
  const int m = necklace_.pearl_size();
  entries_.reserve(static_cast<std::size_t>(necklace_.vertex_count()));
  for (const auto& s : sectors_) {
    for (int n = 0; n < m; ++n) entries_.push_back({s.k, n, s.values(n)});
  }
  if (has_vectors_) {
    const int dim = necklace_.vertex_count();
    vectors_.resize(dim, dim);
    parallel_for(sectors_.size(), [&](std::size_t k) {
      const auto& s = sectors_[k];
      for (int n = 0; n < m; ++n) {
        vectors_.col(static_cast<Eigen::Index>(k) * m + n) = lift_eigenvector(s.vectors.col(n), s.k, s.pearls);
      }
    });
  }
}

const Eigen::MatrixXcd& FullSpectrum::vectors() const {
  if (!has_vectors_) throw Error(ErrorKind::invalid_parameter, "spectrum was computed without eigenvectors");
  return vectors_;
}

Eigen::VectorXd FullSpectrum::values() const {
  Eigen::VectorXd v(static_cast<Eigen::Index>(entries_.size()));
  for (std::size_t i = 0; i < entries_.size(); ++i) v(static_cast<Eigen::Index>(i)) = entries_[i].value;
  return v;
}

Eigen::VectorXd FullSpectrum::sorted_values() const {
  Eigen::VectorXd v = values();
  std::sort(v.begin(), v.end());
  return v;
}

FullSpectrum full_spectrum(const Necklace& necklace, bool with_vectors) {
  const int k_count = necklace.pearls();
  std::vector<SectorSpectrum> sectors(static_cast<std::size_t>(k_count));
  parallel_for(sectors.size(), [&](std::size_t k) {
    sectors[k] = sector_spectrum(necklace.pearl(), static_cast<int>(k), k_count);
  });
  return FullSpectrum(necklace, std::move(sectors), with_vectors);
}

std::array<ClosedFormPair, 2> comb1_closed_form(int k, int pearls) {
  const double c = std::cos(momentum(k, pearls));
  const double root = std::sqrt(1.0 + c * c);
  std::array<ClosedFormPair, 2> out;
  const double lambdas[2] = {c - root, c + root};
  for (int i = 0; i < 2; ++i) {
    const double l = lambdas[i];
    Eigen::VectorXcd v(2);
    v << cd(l, 0.0), cd(1.0, 0.0);
    out[i] = {l, v / std::sqrt(1.0 + l * l)};
  }
  return out;
}

std::array<ClosedFormPair, 3> comb2_closed_form(int k, int pearls) {
  const double p = momentum(k, pearls);
  const double s = std::sqrt(3.0 + 2.0 * std::cos(p));
  const cd link_in = 1.0 + std::polar(1.0, -p);
  const cd link_out = std::conj(link_in);

  Eigen::VectorXcd zero(3);
  zero << 0.0, -1.0, link_in;
  zero /= s;

  std::array<ClosedFormPair, 3> out;
  for (int sign : {-1, 1}) {
    Eigen::VectorXcd v(3);
    v << sign * s, link_out, 1.0;
    out[sign < 0 ? 0 : 2] = {sign * s, v / (std::sqrt(2.0) * s)};
  }
  out[1] = {0.0, zero};
  return out;
}

}  // namespace necklace
