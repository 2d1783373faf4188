#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "necklace/bloch.hpp"

namespace necklace {

/// Probability vector over the necklace vertices (flat index order).
class Distribution {
 public:
  /// Clamps entries in [-1e-12, 0) to zero. Larger negativity, or a total
  /// further than 1e-9 from one, raises numerical-failure.
  static Distribution from_raw(std::vector<double> raw);

  const std::vector<double>& values() const noexcept { return p_; }
  std::size_t size() const noexcept { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  double sum() const;

 private:
  explicit Distribution(std::vector<double> p) : p_(std::move(p)) {}
  std::vector<double> p_;
};

/// Unit-norm starting amplitudes.
class InitialState {
 public:
  /// Walker localised on vertex (j, m), 1-based.
  static InitialState vertex(const Necklace& necklace, int j, int m);
  /// Throws invalid-parameter unless the norm is 1 within 1e-12.
  static InitialState from_amplitudes(Eigen::VectorXcd amplitudes);

  const Eigen::VectorXcd& amplitudes() const noexcept { return amplitudes_; }

 private:
  explicit InitialState(Eigen::VectorXcd a) : amplitudes_(std::move(a)) {}
  Eigen::VectorXcd amplitudes_;
};

/// Eigenpair indices (into FullSpectrum::entries) grouped into numerically
/// equal eigenvalues by a sorted sweep: neighbours closer than the tolerance
/// share a group.
struct DegeneracyPartition {
  std::vector<std::vector<int>> groups;
  std::vector<double> group_values;  // mean eigenvalue per group
  double tolerance = 0.0;
  /// Set when merging looks like it swallowed a genuine gap: a group wider than
  /// the tolerance, or a merged neighbour gap above 1e-3 * tolerance.
  bool ambiguous = false;
};

DegeneracyPartition partition_by_degeneracy(const Eigen::VectorXd& values, double tolerance);

/// 1e-8 * max |lambda|.
double default_degeneracy_tolerance(const FullSpectrum& spectrum);

Distribution probability_at_time(const FullSpectrum& spectrum, const InitialState& start, double t);

/// Exact uniform time average over [0, T]; eigenvalue differences within a
/// degeneracy group use G = 1, all others G(d, T) = (1 - e^{-idT}) / (idT).
/// A non-positive tolerance selects default_degeneracy_tolerance.
Distribution time_averaged(const FullSpectrum& spectrum, const InitialState& start, double horizon,
                           double tolerance = 0.0);

struct LimitingDistribution {
  Distribution distribution;
  DegeneracyPartition partition;
};

/// T -> infinity limit: sum over degeneracy groups of |<x|P_g|start>|^2.
LimitingDistribution limiting_distribution(const FullSpectrum& spectrum, const InitialState& start,
                                           double tolerance);

/// Un-halved total variation sum_x |p_x - q_x|, in [0, 2].
double tv_distance(const Distribution& p, const Distribution& q);

/// sum over ordered pairs with |lambda_a - lambda_b| > tolerance of
/// 2 |<psi_a|start>|^2 / (T |lambda_a - lambda_b|).
double lemma43_bound(const FullSpectrum& spectrum, const InitialState& start, double horizon, double tolerance);

/// Precomputes the per-group projections of the start state so that repeated
/// time averages, the limit and the pair bound cost O(N G^2) or less.
class TimeAverager {
 public:
  TimeAverager(const FullSpectrum& spectrum, const InitialState& start, double tolerance);

  const DegeneracyPartition& partition() const noexcept { return partition_; }
  Distribution limiting() const;
  Distribution averaged(double horizon) const;
  double lemma43_bound(double horizon) const;

 private:
  DegeneracyPartition partition_;
  Eigen::MatrixXcd projections_;     // N x G', columns P_g |start> for groups with weight
  std::vector<double> active_values_;
  double pair_sum_ = 0.0;            // sum_a |ov_a|^2 sum_{b apart} 1/|d_ab|
};

/// Geometric grid lo, lo*ratio, ... below hi, then hi itself.
std::vector<double> geometric_grid(double lo, double hi, double ratio);

struct MixingTimeResult {
  std::optional<double> mixing_time;  // empty when TV at T_hi still exceeds eps
  double tv_at_horizon = 0.0;
  std::vector<double> grid;
  std::vector<double> tv;
};

/// Smallest grid time after which the time-averaged TV distance to the limit
/// stays <= eps on every later grid point.
MixingTimeResult mixing_time(const FullSpectrum& spectrum, const InitialState& start, double eps, double horizon_hi,
                             double tolerance = 0.0, double horizon_lo = 1.0, double ratio = 1.05);

}  // namespace necklace
