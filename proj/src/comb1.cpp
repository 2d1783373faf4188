#include "necklace/comb1.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "necklace/bloch.hpp"
#include "necklace/error.hpp"
#include "necklace/parallel.hpp"

namespace necklace {
namespace {

constexpr double kImagTolerance = 1e-12;

void check_vertex(int pearls, int v) {
  if (v < 1 || v > pearls) {
    throw Error(ErrorKind::invalid_parameter, "vertex " + std::to_string(v) + " outside 1.." + std::to_string(pearls));
  }
}

void check_pearls(int pearls) {
  if (pearls < 3) throw Error(ErrorKind::invalid_parameter, "K must be >= 3");
}

}  // namespace

int antipodal_indicator(int pearls, int x, int z) {
  const int d = ((x - z) % pearls + pearls) % pearls;
  if (d == 0) return 1;
  return (pearls % 2 == 0 && d == pearls / 2) ? 1 : 0;
}

double cycle_limiting(int pearls, int x, int z) {
  check_pearls(pearls);
  check_vertex(pearls, x);
  check_vertex(pearls, z);
  const double k = pearls;
  const double correction = pearls % 2 == 0 ? 2.0 : 1.0;
  return (1.0 + antipodal_indicator(pearls, x, z)) / k - correction / (k * k);
}

Comb1Pair comb1_eigenvalues(int k, int pearls) {
  const double c = std::cos(momentum(k, pearls));
  const double root = std::sqrt(1.0 + c * c);
  return {c - root, c + root};
}

Comb1Coefficients comb1_coefficients(int pearls, int x, int z) {
  check_pearls(pearls);
  check_vertex(pearls, x);
  check_vertex(pearls, z);
  Comb1Coefficients out;
  out.pearls = pearls;
  out.even = pearls % 2 == 0;
  out.f = antipodal_indicator(pearls, x, z);
  out.C = out.even ? 3.0 / (2.0 * pearls) : 3.0 / (4.0 * pearls);

  const long long shift = (2LL * (x - z)) % pearls;
  CompensatedSum<double> a;
  CompensatedSum<std::complex<double>> b;
  for (int k = 0; k < pearls; ++k) {
    const double c = std::cos(momentum(k, pearls));
    const double w = 1.0 / (2.0 * (1.0 + c * c));
    a.add(w);
    const long long phase = ((shift * k) % pearls + pearls) % pearls;
    b.add(std::polar(w, 2.0 * std::numbers::pi * static_cast<double>(phase) / pearls));
  }
  out.A = a.value() / pearls;
  const std::complex<double> bsum = b.value() / static_cast<double>(pearls);
  if (std::abs(bsum.imag()) > kImagTolerance) {
    throw Error(ErrorKind::numerical_failure, "B coefficient has imaginary part " + std::to_string(bsum.imag()));
  }
  out.B = bsum.real();
  return out;
}

double comb1_limiting(int pearls, Site start, Site target, int x, int z) {
  const Comb1Coefficients c = comb1_coefficients(pearls, x, z);
  const double k = pearls;
  if (start == target) return (1.0 - c.A - c.B - c.C + c.f) / k;
  const double edge = c.even ? 1.0 / (2.0 * k) : 1.0 / (4.0 * k);
  return (c.A + c.B - edge) / k;
}

Comb1HighK comb1_high_k(int pearls) {
  if (pearls < 50) throw Error(ErrorKind::invalid_parameter, "the large-K approximation needs K >= 50");
  const double k = pearls;
  const double r2 = std::numbers::sqrt2;
  const bool even = pearls % 2 == 0;
  // second-order terms are C/K and the base<->tooth edge term; both halve for odd K
  const double base_shift = (even ? 6.0 : 3.0) / (4.0 * k * k);
  const double tooth_shift = (even ? 1.0 : 0.5) / (2.0 * k * k);
  Comb1HighK out;
  out.generic_base = (4.0 - r2) / (4.0 * k) - base_shift;
  out.generic_tooth = r2 / (4.0 * k) - tooth_shift;
  out.special_base = (4.0 - r2) / (2.0 * k) - base_shift;
  out.special_tooth = r2 / (2.0 * k) - tooth_shift;
  out.opposite_special = even;
  return out;
}

}  // namespace necklace
