#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "necklace/bloch.hpp"

namespace necklace {

/// Smallest gap between sorted neighbours that exceeds the tolerance.
/// Throws fully-degenerate when there is none.
double min_nonzero_gap(std::span<const double> eigenvalues, double tolerance);
double min_nonzero_gap(const Eigen::VectorXd& eigenvalues, double tolerance);

struct CosBoundReport {
  int n = 0;
  int m = 0;
  double c_measured = 0.0;
  std::size_t pair_count = 0;
};

/// True when the eigenvalue ranges of branches n and n+1 overlap across
/// sectors, i.e. ascending order may not follow a smooth band.
bool branches_overlap(const FullSpectrum& spectrum, int n);

/// min |lambda_{j,n} - lambda_{k,m}| / |cos p_j - cos p_k| over sector pairs where
/// both differences exceed the tolerance. Throws branch-crossing when a branch
/// between n and m overlaps its neighbour and empty-report when nothing is
/// admissible.
CosBoundReport cos_bound_constant(const FullSpectrum& spectrum, int n, int m, double tolerance);

/// min over all j, k of |lambda_{j,n} - lambda_{k,m}|, n != m.
double cross_sector_min_gap(const FullSpectrum& spectrum, int n, int m);

/// (1/(8c)) (K/T) ln^2(K/2): one branch pair's share of the pair bound when the
/// start state overlaps every momentum sector by about 1/K.
double mixing_bound_curve(double c, double pearls, double horizon);

struct GapScanRecord {
  int d = 0;  // 0 = plain cycle
  int pearls = 0;
  double min_gap = 0.0;
  double tolerance = 0.0;
};

struct GapSlope {
  int d = 0;
  double slope = 0.0;
  std::size_t points = 0;
};

struct GapScan {
  std::vector<GapScanRecord> records;  // ordered by (d, K) as given
  std::vector<GapSlope> slopes;        // per d, least squares of log gap vs log K
};

GapScan gap_scan(std::span<const int> d_list, std::span<const int> k_list);

/// Ordinary least-squares slope of y against x.
double least_squares_slope(std::span<const double> x, std::span<const double> y);

}  // namespace necklace
