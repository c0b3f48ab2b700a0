#include "nlsob/maximal.hpp"

#include <algorithm>
#include <cmath>

#include "nlsob/ball_sums.hpp"
#include "nlsob/spec_text.hpp"

namespace nlsob {

std::vector<double> maximal_radii(const Grid& grid) {
  std::vector<double> radii = {0.0};
  const auto dyadic = dyadic_radii(grid);
  radii.insert(radii.end(), dyadic.begin(), dyadic.end());
  return radii;
}

std::vector<double> hl_maximal_values(const Grid& grid, std::span<const double> v, std::span<const double> radii) {
  if (radii.empty()) throw SpecError("hl_maximal: empty radius set");
  if (v.size() != grid.size()) throw SpecError("hl_maximal: field size does not match grid");
  std::vector<double> a(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) a[i] = std::abs(v[i]);
  const BallSummer summer(grid, a);
  std::vector<BallStencil> balls;
  for (double r : radii) balls.push_back(make_ball_stencil(grid, r));

  std::vector<double> out(v.size(), 0.0);
  const auto N = static_cast<std::ptrdiff_t>(v.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < N; ++c) {
    const auto cell = static_cast<std::size_t>(c);
    double best = a[cell];
    for (const auto& ball : balls) {
      const auto s = summer.sum(cell, ball);
      best = std::max(best, std::max(0.0, s.sum) / static_cast<double>(s.count));
    }
    out[cell] = best;
  }
  return out;
}

SampledField hl_maximal(const SampledField& f, std::span<const double> radii) {
  return make_field(f.grid, hl_maximal_values(f.grid, f.values, radii));
}

std::vector<double> hl_maximal_reference(const Grid& grid, std::span<const double> v,
                                         std::span<const double> radii) {
  if (radii.empty()) throw SpecError("hl_maximal: empty radius set");
  const int n = grid.dim();
  std::vector<double> out(v.size());
  std::vector<double> x(n), y(n);
  for (std::size_t c = 0; c < v.size(); ++c) {
    grid.center(c, x);
    double best = std::abs(v[c]);
    for (double r : radii) {
      const double r2 = r * r * (1.0 + 1e-12);
      double sum = 0.0;
      std::size_t count = 0;
      for (std::size_t d = 0; d < v.size(); ++d) {
        double dist2 = 0.0;
        for (int a = 0; a < n; ++a) {
          const double t = (grid.index(d, a) - grid.index(c, a)) * grid.h(a);
          dist2 += t * t;
        }
        if (dist2 <= r2) {
          sum += std::abs(v[d]);
          ++count;
        }
      }
      best = std::max(best, sum / static_cast<double>(count));
    }
    out[c] = best;
  }
  return out;
}

MaximalOperator centered_ball_maximal(const Grid& grid) {
  return [grid, radii = maximal_radii(grid)](std::span<const double> v) {
    return hl_maximal_values(grid, v, radii);
  };
}

}  // namespace nlsob
