#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nlsob/grid.hpp"

namespace nlsob {

/// Lattice ball {d : sum (d_i h_i)^2 <= r^2} stored as rows along axis 0.
/// Each row fixes the offsets of axes 1..n-1 and covers [-w, w] on axis 0.
struct BallStencil {
  double radius = 0.0;
  std::vector<int> row_offsets;  // (dim - 1) ints per row
  std::vector<int> half_width;   // one per row
  std::size_t lattice_count = 0;

  std::size_t rows() const { return half_width.size(); }
};

BallStencil make_ball_stencil(const Grid& grid, double radius);

/// Radii {h_min * 2^j : j >= 0} up to the first one reaching the box diameter.
std::vector<double> dyadic_radii(const Grid& grid);

/// Sums of a cell field over lattice balls clipped to the box, from row
/// prefix sums along axis 0. Prefix sums are kept in extended precision so
/// the differences stay accurate for small balls.
class BallSummer {
 public:
  BallSummer(const Grid& grid, std::span<const double> values);

  struct Result {
    double sum = 0.0;
    std::size_t count = 0;  // lattice points inside the box
  };
  Result sum(std::size_t cell, const BallStencil& stencil) const;

 private:
  Grid grid_;
  std::size_t row_length_;
  std::vector<long double> prefix_;  // (row_length + 1) per row
};

}  // namespace nlsob
