#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nlsob/grid.hpp"
#include "nlsob/maximal.hpp"
#include "nlsob/weight.hpp"

namespace nlsob {

/// Index box [lo, hi) of cells; the physical region is a cube up to the
/// per-axis rounding of its side to whole cells.
struct IndexCube {
  std::vector<int> lo, hi;

  std::size_t cells() const;
};

struct CubeFamily {
  std::vector<IndexCube> cubes;
};

/// Centred cubes of odd side 2k+1 cells, k in {0, 1, 2, 4, ...}, at centres
/// spaced max(1, k/2) apart, plus dyadic cubes of side 2^j cells anchored in
/// every orthant at the grid vertex nearest to each singular point. Only
/// cubes inside the box are kept.
CubeFamily default_cube_family(const Grid& grid, const std::vector<std::vector<double>>& singular_points = {});
/// Only the dyadic cubes anchored at the grid vertex nearest to each point,
/// one per orthant and scale. May be empty.
CubeFamily anchored_cube_family(const Grid& grid, const std::vector<std::vector<double>>& points);
/// Default family with the power-weight centre (if any) as singular point.
CubeFamily cube_family_for(const Weight& w);

struct ApResult {
  double value = 0.0;
  bool infinite = false;
  IndexCube cube;
  std::size_t cubes = 0;
};

/// p = 1: max over cubes of avg(w) * sup(w^{-1}); p > 1: max of
/// avg(w) * avg(w^{1-p'})^{p-1}. Power weights use the exact cube supremum.
ApResult muckenhoupt_constant(const Weight& w, double p, const CubeFamily& family);

/// Uncentred maximal operator over the cubes of a family:
/// M f(x) = max over family cubes Q containing x of the average of |f| on Q.
MaximalOperator cube_family_maximal(const Grid& grid, const CubeFamily& family);

/// Mean of a cell field over an index cube.
double cube_average(const Grid& grid, std::span<const double> v, const IndexCube& q);

}  // namespace nlsob
