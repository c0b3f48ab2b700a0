#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nlsob/ball_sums.hpp"
#include "nlsob/norms.hpp"
#include "nlsob/reduce.hpp"
#include "nlsob/spec_text.hpp"

namespace nlsob {

namespace {

void check_size(const Grid& grid, std::span<const double> v) {
  if (v.size() != grid.size()) throw SpecError("field size does not match grid");
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Solves modular(lambda) = 1 for a modular that is strictly decreasing where
// positive. `scale` is a starting guess for the bracket.
template <class Modular>
double solve_modular(Modular&& modular, double scale) {
  double lo = scale, hi = scale;
  for (int i = 0; modular(hi) > 1.0; ++i) {
    hi *= 2.0;
    if (i > 2000 || !std::isfinite(hi)) throw std::runtime_error("modular bracket failed: non-finite values");
  }
  for (int i = 0; modular(lo) <= 1.0; ++i) {
    lo *= 0.5;
    if (i > 2000 || lo == 0.0) throw std::runtime_error("modular bracket failed: lower end");
  }
  while (hi / lo - 1.0 > 1e-13) {
    const double mid = std::sqrt(lo * hi);
    if (mid <= lo || mid >= hi) break;
    (modular(mid) > 1.0 ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace

double lebesgue_norm(const Grid& grid, std::span<const double> v, double p) {
  check_size(grid, v);
  if (!(p > 0.0) || !std::isfinite(p)) throw SpecError("lebesgue exponent must be finite and positive");
  std::vector<double> terms(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) terms[i] = std::pow(std::abs(v[i]), p);
  return std::pow(pairwise_sum(terms) * grid.cell_volume(), 1.0 / p);
}

double weighted_lebesgue_norm(const Grid& grid, std::span<const double> v, double r,
                              std::span<const double> weight) {
  check_size(grid, v);
  if (weight.size() != v.size()) throw SpecError("weight size does not match grid");
  if (!(r > 0.0) || !std::isfinite(r)) throw SpecError("weighted exponent must be finite and positive");
  std::vector<double> terms(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(weight[i] >= 0.0)) throw SpecError("weight has a negative or NaN cell");
    terms[i] = v[i] == 0.0 ? 0.0 : std::pow(std::abs(v[i]), r) * weight[i];
  }
  return std::pow(pairwise_sum(terms) * grid.cell_volume(), 1.0 / r);
}

double luxemburg_norm(const Grid& grid, std::span<const double> v, const OrliczFunction& phi) {
  check_size(grid, v);
  const double m = max_abs(v);
  if (m == 0.0) return 0.0;
  std::vector<double> nz;
  for (double x : v)
    if (x != 0.0) nz.push_back(std::abs(x));
  std::vector<double> terms(nz.size());
  const double dv = grid.cell_volume();
  auto modular = [&](double lambda) {
    for (std::size_t i = 0; i < nz.size(); ++i) terms[i] = phi(nz[i] / lambda);
    return pairwise_sum(terms) * dv;
  };
  return solve_modular(modular, m);
}

double orlicz_slice_norm(const Grid& grid, std::span<const double> v, const OrliczFunction& phi, double r,
                         double t) {
  check_size(grid, v);
  if (!(t >= 0.5 * grid.h_min())) throw SpecError("orlicz-slice: t is smaller than half a cell");
  if (!(r > 0.0) || !std::isfinite(r)) throw SpecError("orlicz-slice: r must be finite and positive");
  const BallStencil ball = make_ball_stencil(grid, t);
  const double dv = grid.cell_volume();
  const double ball_norm = 1.0 / phi.inverse(1.0 / (static_cast<double>(ball.lattice_count) * dv));
  const int n = grid.dim();
  const auto N = static_cast<std::ptrdiff_t>(grid.size());

  std::vector<double> ratio(grid.size(), 0.0);
#pragma omp parallel
  {
    std::vector<double> local;
    std::vector<int> idx(n);
#pragma omp for schedule(dynamic, 16)
    for (std::ptrdiff_t c = 0; c < N; ++c) {
      local.clear();
      for (int a = 0; a < n; ++a) idx[a] = grid.index(static_cast<std::size_t>(c), a);
      for (std::size_t row = 0; row < ball.rows(); ++row) {
        std::size_t base = 0;
        bool inside = true;
        for (int a = 1; a < n; ++a) {
          const int j = idx[a] + ball.row_offsets[row * (n - 1) + (a - 1)];
          if (j < 0 || j >= grid.points(a)) {
            inside = false;
            break;
          }
          base += static_cast<std::size_t>(j) * grid.stride(a);
        }
        if (!inside) continue;
        const int w = ball.half_width[row];
        const int lo = std::max(0, idx[0] - w), hi = std::min(grid.points(0) - 1, idx[0] + w);
        for (int i = lo; i <= hi; ++i) {
          const double x = std::abs(v[base + static_cast<std::size_t>(i)]);
          if (x != 0.0) local.push_back(x);
        }
      }
      if (local.empty()) continue;
      const double m = *std::max_element(local.begin(), local.end());
      std::vector<double> terms(local.size());
      auto modular = [&](double lambda) {
        for (std::size_t i = 0; i < local.size(); ++i) terms[i] = phi(local[i] / lambda);
        return pairwise_sum(terms) * dv;
      };
      ratio[static_cast<std::size_t>(c)] = solve_modular(modular, m) / ball_norm;
    }
  }
  return lebesgue_norm(grid, ratio, r);
}

double mixed_norm(const Grid& grid, std::span<const double> v, std::span<const double> r) {
  check_size(grid, v);
  const int n = grid.dim();
  if (static_cast<int>(r.size()) != n) throw SpecError("mixed: exponent count must equal the dimension");
  std::vector<double> cur(v.begin(), v.end());
  for (double& x : cur) x = std::abs(x);
  for (int a = 0; a < n; ++a) {
    const std::size_t len = static_cast<std::size_t>(grid.points(a));
    const std::size_t rows = cur.size() / len;
    std::vector<double> next(rows);
    std::vector<double> terms(len);
    for (std::size_t row = 0; row < rows; ++row) {
      for (std::size_t i = 0; i < len; ++i) terms[i] = std::pow(cur[row * len + i], r[a]);
      next[row] = std::pow(pairwise_sum(terms) * grid.h(a), 1.0 / r[a]);
    }
    cur.swap(next);
  }
  return cur.front();
}

std::vector<double> sample_exponent(const space::VariableLebesgue& spec, const Grid& grid) {
  if (spec.axis < 0 || spec.axis >= grid.dim()) throw SpecError("variable: axis out of range");
  std::vector<double> e(grid.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = spec.base + spec.slope * grid.center(i, spec.axis);
  return e;
}

double variable_lebesgue_norm(const Grid& grid, std::span<const double> v, std::span<const double> exponent) {
  check_size(grid, v);
  if (exponent.size() != v.size()) throw SpecError("variable: exponent field size does not match grid");
  for (double e : exponent)
    if (!(e > 1.0) || !std::isfinite(e)) throw SpecError("variable: exponent must lie in (1, inf) on the grid");
  const double m = max_abs(v);
  if (m == 0.0) return 0.0;
  std::vector<std::size_t> nz;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0.0) nz.push_back(i);
  std::vector<double> terms(nz.size());
  const double dv = grid.cell_volume();
  auto modular = [&](double lambda) {
    for (std::size_t k = 0; k < nz.size(); ++k) terms[k] = std::pow(std::abs(v[nz[k]]) / lambda, exponent[nz[k]]);
    return pairwise_sum(terms) * dv;
  };
  return solve_modular(modular, m);
}

}  // namespace nlsob
