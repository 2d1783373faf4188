#include "necklace/mixing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "necklace/error.hpp"
#include "necklace/parallel.hpp"
#include "necklace/walk.hpp"

namespace necklace {

double min_nonzero_gap(std::span<const double> eigenvalues, double tolerance) {
  if (eigenvalues.size() < 2) throw Error(ErrorKind::invalid_parameter, "need at least two eigenvalues");
  if (!(tolerance >= 0.0)) throw Error(ErrorKind::invalid_parameter, "gap tolerance must be >= 0");
  std::vector<double> sorted(eigenvalues.begin(), eigenvalues.end());
  std::sort(sorted.begin(), sorted.end());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    const double d = sorted[i] - sorted[i - 1];
    if (d > tolerance) best = std::min(best, d);
  }
  if (!std::isfinite(best)) throw Error(ErrorKind::fully_degenerate, "no eigenvalue gap exceeds the tolerance");
  return best;
}

double min_nonzero_gap(const Eigen::VectorXd& eigenvalues, double tolerance) {
  return min_nonzero_gap(std::span<const double>(eigenvalues.data(), static_cast<std::size_t>(eigenvalues.size())),
                         tolerance);
}

bool branches_overlap(const FullSpectrum& spectrum, int n) {
  double top = -std::numeric_limits<double>::infinity();
  double bottom = std::numeric_limits<double>::infinity();
  for (const auto& s : spectrum.sectors()) {
    top = std::max(top, s.values(n));
    bottom = std::min(bottom, s.values(n + 1));
  }
  return top > bottom;
}

namespace {

void check_branch(const FullSpectrum& spectrum, int n) {
  if (n < 0 || n >= spectrum.necklace().pearl_size()) {
    throw Error(ErrorKind::invalid_parameter, "branch index " + std::to_string(n) + " out of range");
  }
}

}  // namespace

CosBoundReport cos_bound_constant(const FullSpectrum& spectrum, int n, int m, double tolerance) {
  check_branch(spectrum, n);
  check_branch(spectrum, m);
  for (int b = std::max(0, std::min(n, m) - 1); b <= std::max(n, m) && b + 1 < spectrum.necklace().pearl_size(); ++b) {
    if (branches_overlap(spectrum, b)) {
      throw Error(ErrorKind::branch_crossing,
                  "branches " + std::to_string(b) + " and " + std::to_string(b + 1) + " overlap");
    }
  }
  const int pearls = spectrum.necklace().pearls();
  std::vector<double> cosines(static_cast<std::size_t>(pearls));
  for (int k = 0; k < pearls; ++k) cosines[k] = std::cos(momentum(k, pearls));

  CosBoundReport report{n, m, std::numeric_limits<double>::infinity(), 0};
  for (int j = 0; j < pearls; ++j) {
    for (int k = 0; k < pearls; ++k) {
      const double dc = std::abs(cosines[j] - cosines[k]);
      const double dl = std::abs(spectrum.value(j, n) - spectrum.value(k, m));
      if (dc <= tolerance || dl <= tolerance) continue;
      report.c_measured = std::min(report.c_measured, dl / dc);
      ++report.pair_count;
    }
  }
  if (report.pair_count == 0) throw Error(ErrorKind::empty_report, "no admissible sector pairs");
  return report;
}

double cross_sector_min_gap(const FullSpectrum& spectrum, int n, int m) {
  check_branch(spectrum, n);
  check_branch(spectrum, m);
  if (n == m) throw Error(ErrorKind::invalid_parameter, "cross-sector gap needs two different branches");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& a : spectrum.sectors()) {
    for (const auto& b : spectrum.sectors()) best = std::min(best, std::abs(a.values(n) - b.values(m)));
  }
  return best;
}

double mixing_bound_curve(double c, double pearls, double horizon) {
  if (!(c > 0.0) || !(pearls >= 3.0) || !(horizon > 0.0)) {
    throw Error(ErrorKind::invalid_parameter, "mixing bound needs c > 0, K >= 3, T > 0");
  }
  const double log_half = std::log(pearls / 2.0);
  return (1.0 / (8.0 * c)) * (pearls / horizon) * log_half * log_half;
}

double least_squares_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorKind::invalid_parameter, "slope fit needs two or more paired points");
  }
  const double count = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= count;
  my /= count;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw Error(ErrorKind::invalid_parameter, "slope fit needs distinct x values");
  return sxy / sxx;
}

GapScan gap_scan(std::span<const int> d_list, std::span<const int> k_list) {
  for (int d : d_list) {
    if (d < 0) throw Error(ErrorKind::invalid_parameter, "tooth spacing must be >= 0");
  }
  GapScan scan;
  scan.records.resize(d_list.size() * k_list.size());
  parallel_for(scan.records.size(), [&](std::size_t i) {
    const int d = d_list[i / k_list.size()];
    const int pearls = k_list[i % k_list.size()];
    const Necklace necklace(d == 0 ? Pearl::cycle() : Pearl::comb(d), pearls);
    const FullSpectrum spectrum = full_spectrum(necklace, false);
    const double tol = default_degeneracy_tolerance(spectrum);
    scan.records[i] = {d, pearls, min_nonzero_gap(spectrum.values(), tol), tol};
  });
  for (std::size_t di = 0; di < d_list.size(); ++di) {
    std::vector<double> lx, ly;
    for (std::size_t ki = 0; ki < k_list.size(); ++ki) {
      const auto& r = scan.records[di * k_list.size() + ki];
      lx.push_back(std::log(static_cast<double>(r.pearls)));
      ly.push_back(std::log(r.min_gap));
    }
    GapSlope slope{d_list[di], std::numeric_limits<double>::quiet_NaN(), lx.size()};
    if (lx.size() >= 2) slope.slope = least_squares_slope(lx, ly);
    scan.slopes.push_back(slope);
  }
  return scan;
}

}  // namespace necklace
