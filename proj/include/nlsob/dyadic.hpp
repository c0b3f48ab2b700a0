#pragma once

#include <span>
#include <vector>

namespace nlsob {

/// Shifted dyadic system: per axis the cubes are
/// (2^nu (m + (-1)^nu alpha), 2^nu (m + 1 + (-1)^nu alpha)].
struct DyadicSystem {
  std::vector<double> alpha;  // each entry in {0, 1/3, 2/3}
  int nu_min = 0;
  int nu_max = 0;
};

/// Half-open cube (lo, hi] with its level and integer index.
struct DyadicCube {
  int level = 0;
  std::vector<long long> m;
  std::vector<double> lo, hi;
};

double dyadic_lower(int level, long long m, double alpha);

/// Every cube of the system meeting the open box (lo, hi), level by level.
std::vector<DyadicCube> dyadic_cubes(const DyadicSystem& system, std::span<const double> lo,
                                     std::span<const double> hi);

/// All 3^n shift vectors.
std::vector<std::vector<double>> dyadic_shifts(int n);

struct CoverResult {
  bool found = false;
  std::vector<double> alpha;
  DyadicCube cube;
  double volume_ratio = 0.0;  // |Q| / |B|
};

/// Smallest cube over all shifted systems containing the open ball B(c, r).
CoverResult best_dyadic_cover(std::span<const double> center, double radius);

/// (6 sqrt(n))^n, the ratio bound used for the cover check.
double dyadic_cover_bound(int n);

}  // namespace nlsob
