#include "necklace/walk.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "necklace/error.hpp"
#include "necklace/parallel.hpp"

namespace necklace {

using cd = std::complex<double>;

namespace {

constexpr double kNegativeClamp = 1e-12;
constexpr double kUnitSumTolerance = 1e-9;
constexpr double kNormTolerance = 1e-12;
// groups whose start-state weight is below this contribute nothing measurable
constexpr double kInactiveWeight = 1e-30;

// (1 - e^{-ix}) / (ix) with x = d*T, written to avoid cancellation near 0.
cd averaging_kernel(double x) {
  if (std::abs(x) < 1e-6) return {1.0 - x * x / 6.0, -x / 2.0};
  const double half = std::sin(0.5 * x);
  return {std::sin(x) / x, -2.0 * half * half / x};
}

void require_vectors(const FullSpectrum& spectrum, const InitialState& start) {
  if (!spectrum.has_vectors()) throw Error(ErrorKind::invalid_parameter, "walk dynamics need eigenvectors");
  if (start.amplitudes().size() != spectrum.necklace().vertex_count()) {
    throw Error(ErrorKind::invalid_parameter, "initial state length does not match the necklace");
  }
}

double resolve_tolerance(const FullSpectrum& spectrum, double tolerance) {
  return tolerance > 0.0 ? tolerance : default_degeneracy_tolerance(spectrum);
}

}  // namespace

Distribution Distribution::from_raw(std::vector<double> raw) {
  CompensatedSum<double> total;
  for (auto& v : raw) {
    if (!std::isfinite(v)) throw Error(ErrorKind::numerical_failure, "non-finite probability");
    if (v < 0.0) {
      if (v < -kNegativeClamp) {
        throw Error(ErrorKind::numerical_failure, "probability " + std::to_string(v) + " is negative");
      }
      v = 0.0;
    }
    total.add(v);
  }
  if (std::abs(total.value() - 1.0) > kUnitSumTolerance) {
    throw Error(ErrorKind::numerical_failure, "probabilities sum to " + std::to_string(total.value()));
  }
  return Distribution(std::move(raw));
}

double Distribution::sum() const {
  CompensatedSum<double> total;
  for (double v : p_) total.add(v);
  return total.value();
}

InitialState InitialState::vertex(const Necklace& necklace, int j, int m) {
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(necklace.vertex_count());
  a(necklace.index(j, m)) = 1.0;
  return InitialState(std::move(a));
}

InitialState InitialState::from_amplitudes(Eigen::VectorXcd amplitudes) {
  if (std::abs(amplitudes.norm() - 1.0) > kNormTolerance) {
    throw Error(ErrorKind::invalid_parameter, "initial state is not normalised");
  }
  return InitialState(std::move(amplitudes));
}

DegeneracyPartition partition_by_degeneracy(const Eigen::VectorXd& values, double tolerance) {
  if (!(tolerance > 0.0)) throw Error(ErrorKind::invalid_parameter, "degeneracy tolerance must be positive");
  std::vector<int> order(static_cast<std::size_t>(values.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return values(a) < values(b); });

  DegeneracyPartition out;
  out.tolerance = tolerance;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const bool join = i > 0 && values(order[i]) - values(order[i - 1]) <= tolerance;
    if (join) {
      if (values(order[i]) - values(order[i - 1]) > 1e-3 * tolerance) out.ambiguous = true;
      out.groups.back().push_back(order[i]);
    } else {
      out.groups.push_back({order[i]});
    }
  }
  for (auto& g : out.groups) {
    std::sort(g.begin(), g.end());
    double lo = values(g.front()), hi = lo;
    CompensatedSum<double> mean;
    for (int idx : g) {
      lo = std::min(lo, values(idx));
      hi = std::max(hi, values(idx));
      mean.add(values(idx));
    }
    if (hi - lo > tolerance) out.ambiguous = true;
    out.group_values.push_back(mean.value() / static_cast<double>(g.size()));
  }
  return out;
}

double default_degeneracy_tolerance(const FullSpectrum& spectrum) {
  double biggest = 0.0;
  for (const auto& e : spectrum.entries()) biggest = std::max(biggest, std::abs(e.value));
  return 1e-8 * std::max(biggest, 1.0);
}

Distribution probability_at_time(const FullSpectrum& spectrum, const InitialState& start, double t) {
  require_vectors(spectrum, start);
  if (t < 0.0) throw Error(ErrorKind::invalid_parameter, "time must be non-negative");
  const auto& psi = spectrum.vectors();
  Eigen::VectorXcd coeff = psi.adjoint() * start.amplitudes();
  const auto& entries = spectrum.entries();
  for (Eigen::Index a = 0; a < coeff.size(); ++a) coeff(a) *= std::polar(1.0, -entries[a].value * t);
  const Eigen::VectorXcd amp = psi * coeff;
  std::vector<double> p(static_cast<std::size_t>(amp.size()));
  for (Eigen::Index x = 0; x < amp.size(); ++x) p[x] = std::norm(amp(x));
  return Distribution::from_raw(std::move(p));
}

TimeAverager::TimeAverager(const FullSpectrum& spectrum, const InitialState& start, double tolerance) {
  require_vectors(spectrum, start);
  const Eigen::VectorXd values = spectrum.values();
  partition_ = partition_by_degeneracy(values, tolerance);

  const auto& psi = spectrum.vectors();
  const Eigen::VectorXcd overlap = psi.adjoint() * start.amplitudes();
  const Eigen::Index n = psi.rows();

  std::vector<Eigen::VectorXcd> columns;
  for (std::size_t g = 0; g < partition_.groups.size(); ++g) {
    double weight = 0.0;
    for (int a : partition_.groups[g]) weight += std::norm(overlap(a));
    if (weight < kInactiveWeight) continue;
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
    for (int a : partition_.groups[g]) v += psi.col(a) * overlap(a);
    columns.push_back(std::move(v));
    active_values_.push_back(partition_.group_values[g]);
  }
  projections_.resize(n, static_cast<Eigen::Index>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c) projections_.col(static_cast<Eigen::Index>(c)) = columns[c];

  // pair sum for the 1/T bound; per-eigenpair rows are independent
  const auto count = static_cast<std::size_t>(values.size());
  std::vector<double> rows(count, 0.0);
  parallel_for(count, [&](std::size_t a) {
    const double w = std::norm(overlap(static_cast<Eigen::Index>(a)));
    if (w == 0.0) return;
    CompensatedSum<double> inner;
    for (std::size_t b = 0; b < count; ++b) {
      const double d = std::abs(values(static_cast<Eigen::Index>(a)) - values(static_cast<Eigen::Index>(b)));
      if (d > tolerance) inner.add(1.0 / d);
    }
    rows[a] = w * inner.value();
  });
  CompensatedSum<double> total;
  for (double r : rows) total.add(r);
  pair_sum_ = total.value();
}

Distribution TimeAverager::limiting() const {
  std::vector<double> p(static_cast<std::size_t>(projections_.rows()));
  parallel_for(p.size(), [&](std::size_t x) {
    CompensatedSum<double> s;
    for (Eigen::Index g = 0; g < projections_.cols(); ++g) s.add(std::norm(projections_(static_cast<Eigen::Index>(x), g)));
    p[x] = s.value();
  });
  return Distribution::from_raw(std::move(p));
}

Distribution TimeAverager::averaged(double horizon) const {
  if (!(horizon > 0.0)) throw Error(ErrorKind::invalid_parameter, "averaging horizon T must be positive");
  const auto groups = projections_.cols();
  Eigen::MatrixXcd kernel(groups, groups);
  for (Eigen::Index g = 0; g < groups; ++g) {
    for (Eigen::Index h = g + 1; h < groups; ++h) {
      kernel(g, h) = averaging_kernel((active_values_[g] - active_values_[h]) * horizon);
    }
  }
  std::vector<double> p(static_cast<std::size_t>(projections_.rows()));
  parallel_for(p.size(), [&](std::size_t xi) {
    const auto x = static_cast<Eigen::Index>(xi);
    CompensatedSum<double> s;
    for (Eigen::Index g = 0; g < groups; ++g) {
      const cd vg = projections_(x, g);
      s.add(std::norm(vg));
      for (Eigen::Index h = g + 1; h < groups; ++h) {
        s.add(2.0 * (vg * std::conj(projections_(x, h)) * kernel(g, h)).real());
      }
    }
    p[xi] = s.value();
  });
  return Distribution::from_raw(std::move(p));
}

double TimeAverager::lemma43_bound(double horizon) const {
  if (!(horizon > 0.0)) throw Error(ErrorKind::invalid_parameter, "averaging horizon T must be positive");
  return 2.0 * pair_sum_ / horizon;
}

Distribution time_averaged(const FullSpectrum& spectrum, const InitialState& start, double horizon,
                           double tolerance) {
  if (!(horizon > 0.0)) throw Error(ErrorKind::invalid_parameter, "averaging horizon T must be positive");
  return TimeAverager(spectrum, start, resolve_tolerance(spectrum, tolerance)).averaged(horizon);
}

LimitingDistribution limiting_distribution(const FullSpectrum& spectrum, const InitialState& start,
                                           double tolerance) {
  if (!(tolerance > 0.0)) throw Error(ErrorKind::invalid_parameter, "degeneracy tolerance must be positive");
  TimeAverager avg(spectrum, start, tolerance);
  return {avg.limiting(), avg.partition()};
}

double tv_distance(const Distribution& p, const Distribution& q) {
  if (p.size() != q.size()) throw Error(ErrorKind::invalid_parameter, "distributions differ in length");
  CompensatedSum<double> s;
  for (std::size_t i = 0; i < p.size(); ++i) s.add(std::abs(p[i] - q[i]));
  return s.value();
}

double lemma43_bound(const FullSpectrum& spectrum, const InitialState& start, double horizon, double tolerance) {
  if (!(horizon > 0.0)) throw Error(ErrorKind::invalid_parameter, "averaging horizon T must be positive");
  return TimeAverager(spectrum, start, resolve_tolerance(spectrum, tolerance)).lemma43_bound(horizon);
}

std::vector<double> geometric_grid(double lo, double hi, double ratio) {
  if (!(lo > 0.0) || !(hi >= lo) || !(ratio > 1.0)) {
    throw Error(ErrorKind::invalid_parameter, "geometric grid needs 0 < lo <= hi and ratio > 1");
  }
  std::vector<double> grid;
  for (int i = 0;; ++i) {
    const double t = lo * std::pow(ratio, i);
    if (t >= hi * (1.0 - 1e-12)) break;
    grid.push_back(t);
  }
  grid.push_back(hi);
  return grid;
}

MixingTimeResult mixing_time(const FullSpectrum& spectrum, const InitialState& start, double eps, double horizon_hi,
                             double tolerance, double horizon_lo, double ratio) {
  if (!(eps > 0.0) || !(eps <= 2.0)) throw Error(ErrorKind::invalid_parameter, "eps must lie in (0, 2]");
  if (!(horizon_hi > 0.0)) throw Error(ErrorKind::invalid_parameter, "T_hi must be positive");
  TimeAverager avg(spectrum, start, resolve_tolerance(spectrum, tolerance));
  const Distribution limit = avg.limiting();

  MixingTimeResult out;
  out.grid = geometric_grid(std::min(horizon_lo, horizon_hi), horizon_hi, ratio);
  out.tv.reserve(out.grid.size());
  for (double t : out.grid) out.tv.push_back(tv_distance(avg.averaged(t), limit));
  out.tv_at_horizon = out.tv.back();

  std::optional<std::size_t> first;
  for (std::size_t i = out.grid.size(); i-- > 0;) {
    if (out.tv[i] > eps) break;
    first = i;
  }
  if (first) out.mixing_time = out.grid[*first];
  return out;
}

}  // namespace necklace
