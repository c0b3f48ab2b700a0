#include "nlsob/dyadic.hpp"

#include <cmath>
#include <stdexcept>

#include "nlsob/grid.hpp"

namespace nlsob {

double dyadic_lower(int level, long long m, double alpha) {
  const double sign = (level % 2 == 0) ? 1.0 : -1.0;
  return std::ldexp(static_cast<double>(m) + sign * alpha, level);
}

std::vector<DyadicCube> dyadic_cubes(const DyadicSystem& system, std::span<const double> lo,
                                     std::span<const double> hi) {
  const int n = static_cast<int>(system.alpha.size());
  if (static_cast<int>(lo.size()) != n || static_cast<int>(hi.size()) != n)
    throw std::invalid_argument("dyadic_cubes: box dimension does not match the shift");
  if (system.nu_min > system.nu_max) throw std::invalid_argument("dyadic_cubes: empty level range");
  std::vector<DyadicCube> out;
  for (int nu = system.nu_min; nu <= system.nu_max; ++nu) {
    const double side = std::ldexp(1.0, nu);
    std::vector<long long> first(n), last(n);
    for (int a = 0; a < n; ++a) {
      const double shift = dyadic_lower(nu, 0, system.alpha[a]);
      // Cubes with lower < hi and upper > lo.
      first[a] = static_cast<long long>(std::floor((lo[a] - shift) / side));
      last[a] = static_cast<long long>(std::ceil((hi[a] - shift) / side)) - 1;
      while (dyadic_lower(nu, first[a] + 1, system.alpha[a]) <= lo[a]) ++first[a];
      while (dyadic_lower(nu, last[a], system.alpha[a]) >= hi[a]) --last[a];
    }
    std::vector<long long> m = first;
    if (n == 0) break;
    while (true) {
      DyadicCube q;
      q.level = nu;
      q.m = m;
      for (int a = 0; a < n; ++a) {
        q.lo.push_back(dyadic_lower(nu, m[a], system.alpha[a]));
        q.hi.push_back(dyadic_lower(nu, m[a] + 1, system.alpha[a]));
      }
      out.push_back(std::move(q));
      int a = 0;
      for (; a < n; ++a) {
        if (++m[a] <= last[a]) break;
        m[a] = first[a];
      }
      if (a == n) break;
    }
  }
  return out;
}

std::vector<std::vector<double>> dyadic_shifts(int n) {
  std::vector<std::vector<double>> out;
  std::vector<int> digit(n, 0);
  while (true) {
    std::vector<double> alpha(n);
    for (int a = 0; a < n; ++a) alpha[a] = digit[a] / 3.0;
    out.push_back(std::move(alpha));
    int a = 0;
    for (; a < n; ++a) {
      if (++digit[a] < 3) break;
      digit[a] = 0;
    }
    if (a == n) break;
  }
  return out;
}

CoverResult best_dyadic_cover(std::span<const double> center, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("best_dyadic_cover: radius must be positive");
  const int n = static_cast<int>(center.size());
  const double ball = unit_ball_volume(n) * std::pow(radius, n);
  const int base = static_cast<int>(std::floor(std::log2(2.0 * radius)));
  CoverResult best;
  for (const auto& alpha : dyadic_shifts(n)) {
    for (int nu = base; nu <= base + 6; ++nu) {
      const double side = std::ldexp(1.0, nu);
      DyadicCube q;
      q.level = nu;
      bool ok = true;
      for (int a = 0; a < n && ok; ++a) {
        const double shift = dyadic_lower(nu, 0, alpha[a]);
        const auto m = static_cast<long long>(std::floor((center[a] - radius - shift) / side));
        const double lo = dyadic_lower(nu, m, alpha[a]), hi = dyadic_lower(nu, m + 1, alpha[a]);
        ok = lo <= center[a] - radius && center[a] + radius <= hi;
        q.m.push_back(m);
        q.lo.push_back(lo);
        q.hi.push_back(hi);
      }
      if (!ok) continue;
      const double ratio = std::pow(side, n) / ball;
      if (!best.found || ratio < best.volume_ratio) {
        best.found = true;
        best.alpha = alpha;
        best.cube = q;
        best.volume_ratio = ratio;
      }
      break;  // larger levels of the same system only grow
    }
  }
  return best;
}

double dyadic_cover_bound(int n) { return std::pow(6.0 * std::sqrt(static_cast<double>(n)), n); }

}  // namespace nlsob
