#include "nlsob/muckenhoupt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nlsob/spec_text.hpp"

namespace nlsob {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// n-dimensional summed-area table with one guard layer per axis.
class SummedArea {
 public:
  SummedArea(const Grid& grid, std::span<const double> v) : n_(grid.dim()), ext_(n_), stride_(n_) {
    std::size_t total = 1;
    for (int a = 0; a < n_; ++a) {
      ext_[a] = grid.points(a) + 1;
      stride_[a] = total;
      total *= static_cast<std::size_t>(ext_[a]);
    }
    table_.assign(total, 0.0L);
    for (std::size_t c = 0; c < grid.size(); ++c) {
      std::size_t t = 0;
      for (int a = 0; a < n_; ++a) t += static_cast<std::size_t>(grid.index(c, a) + 1) * stride_[a];
      table_[t] = v[c];
    }
    for (int a = 0; a < n_; ++a)
      for (std::size_t t = 0; t < total; ++t)
        if ((t / stride_[a]) % static_cast<std::size_t>(ext_[a]) != 0) table_[t] += table_[t - stride_[a]];
  }

  long double sum(const IndexCube& q) const {
    long double s = 0.0L;
    for (unsigned mask = 0; mask < (1u << n_); ++mask) {
      std::size_t t = 0;
      int low = 0;
      for (int a = 0; a < n_; ++a) {
        const bool take_lo = (mask >> a) & 1u;
        low += take_lo;
        t += static_cast<std::size_t>(take_lo ? q.lo[a] : q.hi[a]) * stride_[a];
      }
      s += (low % 2 == 0) ? table_[t] : -table_[t];
    }
    return s;
  }

 private:
  int n_;
  std::vector<int> ext_;
  std::vector<std::size_t> stride_;
  std::vector<long double> table_;
};

bool inside(const Grid& grid, const IndexCube& q) {
  for (int a = 0; a < grid.dim(); ++a)
    if (q.lo[a] < 0 || q.hi[a] > grid.points(a) || q.lo[a] >= q.hi[a]) return false;
  return true;
}

// Cells per axis for a cube whose side spans `cells0` cells of axis 0.
int cells_on_axis(const Grid& grid, int axis, double side) {
  return std::max(1, static_cast<int>(std::lround(side / grid.h(axis))));
}

// Exact sup of |x - c|^{-a} over the closed physical cube.
double power_inverse_sup(const Grid& grid, const PowerWeight& w, const IndexCube& q) {
  if (w.a == 0.0) return 1.0;
  double near2 = 0.0, far2 = 0.0;
  for (int a = 0; a < grid.dim(); ++a) {
    const double lo = grid.lo(a) + q.lo[a] * grid.h(a), hi = grid.lo(a) + q.hi[a] * grid.h(a);
    const double c = w.center_coord(a);
    const double dn = c < lo ? lo - c : (c > hi ? c - hi : 0.0);
    const double df = std::max(std::abs(c - lo), std::abs(c - hi));
    near2 += dn * dn;
    far2 += df * df;
  }
  if (w.a > 0.0) return near2 == 0.0 ? kInf : std::pow(std::sqrt(near2), -w.a);
  return std::pow(std::sqrt(far2), -w.a);
}

double cell_min(const Grid& grid, std::span<const double> v, const IndexCube& q) {
  const int n = grid.dim();
  std::vector<int> idx(q.lo);
  double m = kInf;
  while (true) {
    std::size_t flat = 0;
    for (int a = 0; a < n; ++a) flat += static_cast<std::size_t>(idx[a]) * grid.stride(a);
    m = std::min(m, v[flat]);
    int a = 0;
    for (; a < n; ++a) {
      if (++idx[a] < q.hi[a]) break;
      idx[a] = q.lo[a];
    }
    if (a == n) break;
  }
  return m;
}

}  // namespace

std::size_t IndexCube::cells() const {
  std::size_t c = 1;
  for (std::size_t a = 0; a < lo.size(); ++a) c *= static_cast<std::size_t>(hi[a] - lo[a]);
  return c;
}

CubeFamily anchored_cube_family(const Grid& grid, const std::vector<std::vector<double>>& points) {
  const int n = grid.dim();
  CubeFamily family;
  int max_points = 0;
  for (int a = 0; a < n; ++a) max_points = std::max(max_points, grid.points(a));
  for (const auto& s : points) {
    std::vector<int> vertex(n);
    for (int a = 0; a < n; ++a) {
      const double coord = s.size() == 1 ? s[0] : s[a];
      vertex[a] = static_cast<int>(std::lround((coord - grid.lo(a)) / grid.h(a)));
      vertex[a] = std::clamp(vertex[a], 0, grid.points(a));
    }
    for (int j = 0; (1 << j) <= max_points; ++j) {
      const double side = (1 << j) * grid.h(0);
      for (unsigned orth = 0; orth < (1u << n); ++orth) {
        IndexCube q;
        for (int a = 0; a < n; ++a) {
          const int cells = cells_on_axis(grid, a, side);
          if ((orth >> a) & 1u) {
            q.lo.push_back(vertex[a] - cells);
            q.hi.push_back(vertex[a]);
          } else {
            q.lo.push_back(vertex[a]);
            q.hi.push_back(vertex[a] + cells);
          }
        }
        if (inside(grid, q)) family.cubes.push_back(std::move(q));
      }
    }
  }
  return family;
}

CubeFamily default_cube_family(const Grid& grid, const std::vector<std::vector<double>>& singular_points) {
  const int n = grid.dim();
  CubeFamily family;
  int max_points = 0;
  for (int a = 0; a < n; ++a) max_points = std::max(max_points, grid.points(a));

  std::vector<int> ks = {0};
  for (int k = 1; 2 * k + 1 <= max_points; k *= 2) ks.push_back(k);
  for (int k : ks) {
    const double side = (2 * k + 1) * grid.h(0);
    std::vector<int> half(n), step(n);
    for (int a = 0; a < n; ++a) {
      const int cells = cells_on_axis(grid, a, side);
      half[a] = cells / 2;
      step[a] = std::max(1, half[a] / 2);
    }
    std::vector<int> c(n);
    for (int a = 0; a < n; ++a) c[a] = half[a];
    bool any = true;
    for (int a = 0; a < n; ++a) any = any && c[a] < grid.points(a);
    while (any) {
      IndexCube q;
      for (int a = 0; a < n; ++a) {
        const int cells = cells_on_axis(grid, a, side);
        q.lo.push_back(c[a] - half[a]);
        q.hi.push_back(c[a] - half[a] + cells);
      }
      if (inside(grid, q)) family.cubes.push_back(std::move(q));
      int a = 0;
      for (; a < n; ++a) {
        c[a] += step[a];
        if (c[a] < grid.points(a)) break;
        c[a] = half[a];
      }
      if (a == n) break;
    }
  }

  auto anchored = anchored_cube_family(grid, singular_points);
  for (auto& q : anchored.cubes) family.cubes.push_back(std::move(q));
  if (family.cubes.empty()) throw SpecError("cube family is empty");
  return family;
}

CubeFamily cube_family_for(const Weight& w) {
  std::vector<std::vector<double>> singular;
  if (w.power) {
    std::vector<double> c(static_cast<std::size_t>(w.grid.dim()));
    for (int a = 0; a < w.grid.dim(); ++a) c[a] = w.power->center_coord(a);
    singular.push_back(std::move(c));
  }
  return default_cube_family(w.grid, singular);
}

double cube_average(const Grid& grid, std::span<const double> v, const IndexCube& q) {
  const SummedArea table(grid, v);
  return static_cast<double>(table.sum(q) / static_cast<long double>(q.cells()));
}

ApResult muckenhoupt_constant(const Weight& w, double p, const CubeFamily& family) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw SpecError("muckenhoupt: p must lie in [1, inf)");
  if (family.cubes.empty()) throw SpecError("muckenhoupt: empty cube family");
  const Grid& grid = w.grid;
  const SummedArea omega(grid, w.samples);
  ApResult out;
  out.cubes = family.cubes.size();

  bool zero_cell = false;
  for (double s : w.samples) zero_cell = zero_cell || s == 0.0;
  std::vector<double> dual(w.samples.size(), 0.0);
  if (p > 1.0) {
    const double e = 1.0 - conjugate_exponent(p);
    for (std::size_t i = 0; i < dual.size(); ++i)
      if (w.samples[i] > 0.0) dual[i] = std::pow(w.samples[i], e);
  }
  const SummedArea dual_table(grid, dual);

  for (const auto& q : family.cubes) {
    const auto cells = static_cast<long double>(q.cells());
    const double avg = static_cast<double>(omega.sum(q) / cells);
    double second;
    if (p == 1.0) {
      if (w.power) {
        second = power_inverse_sup(grid, *w.power, q);
      } else {
        const double m = cell_min(grid, w.samples, q);
        second = m > 0.0 ? 1.0 / m : kInf;
      }
    } else if (zero_cell && cell_min(grid, w.samples, q) == 0.0) {
      second = kInf;
    } else {
      second = std::pow(static_cast<double>(dual_table.sum(q) / cells), p - 1.0);
    }
    const double value = avg * second;
    if (std::isinf(second)) {
      out.value = kInf;
      out.infinite = true;
      out.cube = q;
      return out;
    }
    if (value > out.value || out.cube.lo.empty()) {
      out.value = std::max(out.value, value);
      out.cube = q;
    }
  }
  return out;
}

MaximalOperator cube_family_maximal(const Grid& grid, const CubeFamily& family) {
  return [grid, family](std::span<const double> v) {
    std::vector<double> a(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) a[i] = std::abs(v[i]);
    const SummedArea table(grid, a);
    std::vector<double> out(a);
    const int n = grid.dim();
    for (const auto& q : family.cubes) {
      const double avg = static_cast<double>(table.sum(q) / static_cast<long double>(q.cells()));
      std::vector<int> idx(q.lo);
      while (true) {
        std::size_t flat = 0;
        for (int d = 0; d < n; ++d) flat += static_cast<std::size_t>(idx[d]) * grid.stride(d);
        out[flat] = std::max(out[flat], avg);
        int d = 0;
        for (; d < n; ++d) {
          if (++idx[d] < q.hi[d]) break;
          idx[d] = q.lo[d];
        }
        if (d == n) break;
      }
    }
    return out;
  };
}

}  // namespace nlsob
