#include "nlsob/ball_sums.hpp"

#include <cmath>
#include <stdexcept>

namespace nlsob {

BallStencil make_ball_stencil(const Grid& grid, double radius) {
  if (!(radius >= 0.0) || !std::isfinite(radius)) throw std::invalid_argument("ball radius must be finite and >= 0");
  const int n = grid.dim();
  const double r2 = radius * radius * (1.0 + 1e-12);
  BallStencil s;
  s.radius = radius;

  std::vector<int> reach(n);
  for (int a = 0; a < n; ++a) reach[a] = static_cast<int>(std::floor(radius * (1.0 + 1e-12) / grid.h(a)));

  std::vector<int> off(n > 1 ? n - 1 : 0);
  for (int a = 1; a < n; ++a) off[a - 1] = -reach[a];
  while (true) {
    double used = 0.0;
    for (int a = 1; a < n; ++a) {
      const double d = off[a - 1] * grid.h(a);
      used += d * d;
    }
    if (used <= r2) {
      const int w = static_cast<int>(std::floor(std::sqrt(std::max(0.0, r2 - used)) / grid.h(0)));
      s.row_offsets.insert(s.row_offsets.end(), off.begin(), off.end());
      s.half_width.push_back(w);
      s.lattice_count += static_cast<std::size_t>(2 * w + 1);
    }
    int a = 1;
    for (; a < n; ++a) {
      if (++off[a - 1] <= reach[a]) break;
      off[a - 1] = -reach[a];
    }
    if (a >= n) break;
  }
  return s;
}

std::vector<double> dyadic_radii(const Grid& grid) {
  std::vector<double> radii;
  const double diam = grid.diameter();
  for (double r = grid.h_min();; r *= 2.0) {
    radii.push_back(r);
    if (r >= diam) break;
  }
  return radii;
}

BallSummer::BallSummer(const Grid& grid, std::span<const double> values)
    : grid_(grid), row_length_(static_cast<std::size_t>(grid.points(0))) {
  if (values.size() != grid.size()) throw std::invalid_argument("BallSummer: field size does not match grid");
  const std::size_t rows = grid.size() / row_length_;
  prefix_.assign(rows * (row_length_ + 1), 0.0L);
  for (std::size_t row = 0; row < rows; ++row) {
    long double acc = 0.0L;
    long double* p = &prefix_[row * (row_length_ + 1)];
    p[0] = 0.0L;
    for (std::size_t i = 0; i < row_length_; ++i) {
      acc += values[row * row_length_ + i];
      p[i + 1] = acc;
    }
  }
}

BallSummer::Result BallSummer::sum(std::size_t cell, const BallStencil& stencil) const {
  const Grid& g = grid_;
  const int n = g.dim();
  const int i0 = g.index(cell, 0);
  const int n0 = g.points(0);
  Result out;
  long double acc = 0.0L;
  for (std::size_t row = 0; row < stencil.rows(); ++row) {
    std::size_t row_index = 0;
    bool inside = true;
    for (int a = 1; a < n; ++a) {
      const int j = g.index(cell, a) + stencil.row_offsets[row * (n - 1) + (a - 1)];
      if (j < 0 || j >= g.points(a)) {
        inside = false;
        break;
      }
      row_index += static_cast<std::size_t>(j) * (g.stride(a) / row_length_);
    }
    if (!inside) continue;
    const int w = stencil.half_width[row];
    const int lo = std::max(0, i0 - w);
    const int hi = std::min(n0 - 1, i0 + w);
    const long double* p = &prefix_[row_index * (row_length_ + 1)];
    acc += p[hi + 1] - p[lo];
    out.count += static_cast<std::size_t>(hi - lo + 1);
  }
  out.sum = static_cast<double>(acc);
  return out;
}

}  // namespace nlsob
