#pragma once

namespace necklace {

/// Cycle of K vertices, walker started on z: (1 + f)/K - 2/K^2 for even K and
/// (1 + f)/K - 1/K^2 for odd K, with f = 1 on z and (even K) its antipode.
/// Vertices are 1-based.
double cycle_limiting(int pearls, int x, int z);

/// f(x, z) = 1 iff x = z or (K even and |x - z| = K/2).
int antipodal_indicator(int pearls, int x, int z);

/// Closed-form ingredients of the (K,1)-comb limiting distribution for target
/// pearl x and start pearl z.
struct Comb1Coefficients {
  double A = 0.0;  // (1/K) sum_k w_k,                w_k = 1 / (2 (1 + cos^2 p_k))
  double B = 0.0;  // (1/K) sum_k w_k e^{i 2 p_k (x - z)}, real
  double C = 0.0;  // 3/(4K) odd, 3/(2K) even
  int f = 0;
  int pearls = 0;
  bool even = false;
};

Comb1Coefficients comb1_coefficients(int pearls, int x, int z);

enum class Site { base, tooth };

/// Limiting probability on site `target` of pearl x for a walker started on
/// site `start` of pearl z (pearls 1-based).
///   same site kind:  (1/K)(1 - A - B - C + f)
///   base <-> tooth:  (1/K)(A + B - 1/(4K)) odd K, (1/K)(A + B - 1/(2K)) even K
double comb1_limiting(int pearls, Site start, Site target, int x, int z);

/// Flat large-K approximation of the (K,1)-comb limit from a base start.
struct Comb1HighK {
  double generic_base = 0.0;   // (4 - sqrt2)/(4K) - 6/(4K^2)
  double generic_tooth = 0.0;  // sqrt2/(4K) - 1/(2K^2)
  double special_base = 0.0;   // (4 - sqrt2)/(2K) - 6/(4K^2), start pearl (and antipode, even K)
  double special_tooth = 0.0;  // sqrt2/(2K) - 1/(2K^2)
  bool opposite_special = false;
};

/// Requires K >= 50. Listed corrections are for even K; odd K halves the
/// 1/K^2 terms and only the start pearl is special.
Comb1HighK comb1_high_k(int pearls);

/// lambda_{k,+-} of the (K,1)-comb, used by the identity checks.
struct Comb1Pair {
  double minus = 0.0;
  double plus = 0.0;
};
Comb1Pair comb1_eigenvalues(int k, int pearls);

}  // namespace necklace
