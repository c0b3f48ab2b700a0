#include <algorithm>
#include <cmath>
#include <limits>

#include "nlsob/ball_sums.hpp"
#include "nlsob/norms.hpp"
#include "nlsob/reduce.hpp"
#include "nlsob/spec_text.hpp"

namespace nlsob {

MorreyResult morrey_norm(const Grid& grid, std::span<const double> v, double r, double alpha,
                         std::span<const double> radii) {
  if (v.size() != grid.size()) throw SpecError("field size does not match grid");
  if (radii.empty()) throw SpecError("morrey: empty ball family");
  if (!(r >= 1.0 && r <= alpha && std::isfinite(alpha))) throw SpecError("morrey: need 1 <= r <= alpha < inf");
  std::vector<double> powered(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) powered[i] = std::pow(std::abs(v[i]), r);
  const BallSummer summer(grid, powered);
  const double dv = grid.cell_volume();
  const double e = 1.0 / alpha - 1.0 / r;
  const auto N = static_cast<std::ptrdiff_t>(grid.size());

  MorreyResult best;
  for (double radius : radii) {
    const BallStencil ball = make_ball_stencil(grid, radius);
    const double prefactor = std::pow(static_cast<double>(ball.lattice_count) * dv, e);
    std::vector<double> per_cell(grid.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < N; ++c) {
      const double s = std::max(0.0, summer.sum(static_cast<std::size_t>(c), ball).sum);
      per_cell[static_cast<std::size_t>(c)] = prefactor * std::pow(s * dv, 1.0 / r);
    }
    // First maximiser in canonical order, independent of the thread count.
    const auto it = std::max_element(per_cell.begin(), per_cell.end());
    if (*it > best.value) {
      best.value = *it;
      best.radius = radius;
      best.center = static_cast<std::size_t>(it - per_cell.begin());
    }
  }
  return best;
}

LevelRange default_levels(const Grid& grid) {
  return {static_cast<int>(std::floor(std::log2(grid.h_min()))) - 1,
          static_cast<int>(std::ceil(std::log2(grid.diameter()))) + 1};
}

double bbm_morrey_norm(const Grid& grid, std::span<const double> v, double q, double p, double r, double tau,
                       LevelRange levels) {
  if (v.size() != grid.size()) throw SpecError("field size does not match grid");
  if (!(q > 0.0 && q <= p && p <= r) || !std::isfinite(q) || !std::isfinite(p))
    throw SpecError("bbmorrey: need 0 < q <= p <= r with q, p finite");
  if (!(tau > 0.0)) throw SpecError("bbmorrey: tau must be positive");
  if (levels.min > levels.max) throw SpecError("bbmorrey: empty level range");
  const int n = grid.dim();
  std::vector<double> powered(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) powered[i] = std::pow(std::abs(v[i]), q);

  struct Overlap {
    int cube;
    double length;
  };
  std::vector<double> level_terms;
  for (int nu = levels.min; nu <= levels.max; ++nu) {
    const double side = std::ldexp(1.0, nu);
    // Per axis: which cubes each cell meets and by how much.
    std::vector<std::vector<std::vector<Overlap>>> overlaps(n);
    std::vector<int> first(n), count(n);
    for (int a = 0; a < n; ++a) {
      first[a] = static_cast<int>(std::ceil(grid.lo(a) / side)) - 1;
      const int last = static_cast<int>(std::floor(grid.hi(a) / side));
      count[a] = last - first[a] + 1;
      overlaps[a].resize(static_cast<std::size_t>(grid.points(a)));
      for (int i = 0; i < grid.points(a); ++i) {
        const double c0 = grid.lo(a) + i * grid.h(a), c1 = c0 + grid.h(a);
        const int m0 = static_cast<int>(std::floor(c0 / side)) - 1;
        const int m1 = static_cast<int>(std::ceil(c1 / side));
        for (int m = std::max(m0, first[a]); m <= std::min(m1, last); ++m) {
          const double len = std::min(c1, (m + 1) * side) - std::max(c0, m * side);
          if (len > 0.0) overlaps[a][static_cast<std::size_t>(i)].push_back({m - first[a], len});
        }
      }
    }
    std::size_t cubes = 1;
    for (int a = 0; a < n; ++a) cubes *= static_cast<std::size_t>(count[a]);
    std::vector<double> mass(cubes, 0.0);
    std::vector<std::size_t> pos(n);
    for (std::size_t c = 0; c < grid.size(); ++c) {
      if (powered[c] == 0.0) continue;
      for (int a = 0; a < n; ++a) pos[a] = 0;
      // Enumerate the tensor product of the per-axis overlap lists.
      while (true) {
        double w = powered[c];
        std::size_t cube = 0, mult = 1;
        for (int a = 0; a < n; ++a) {
          const Overlap& o = overlaps[a][static_cast<std::size_t>(grid.index(c, a))][pos[a]];
          w *= o.length;
          cube += static_cast<std::size_t>(o.cube) * mult;
          mult *= static_cast<std::size_t>(count[a]);
        }
        mass[cube] += w;
        int a = 0;
        for (; a < n; ++a) {
          if (++pos[a] < overlaps[a][static_cast<std::size_t>(grid.index(c, a))].size()) break;
          pos[a] = 0;
        }
        if (a == n) break;
      }
    }
    const double prefactor = std::pow(std::pow(side, n), 1.0 / p - 1.0 / q);
    std::vector<double> terms;
    for (double m : mass) {
      if (m <= 0.0) continue;
      const double t = prefactor * std::pow(m, 1.0 / q);
      terms.push_back(std::isinf(r) ? t : std::pow(t, r));
    }
    double level;
    if (terms.empty())
      level = 0.0;
    else if (std::isinf(r))
      level = max_of(terms);
    else
      level = std::pow(pairwise_sum(terms), 1.0 / r);
    level_terms.push_back(std::isinf(tau) ? level : std::pow(level, tau));
  }
  if (std::isinf(tau)) return max_of(level_terms);
  return std::pow(pairwise_sum(level_terms), 1.0 / tau);
}

}  // namespace nlsob
