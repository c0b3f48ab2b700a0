#pragma once

#include <functional>
#include <span>
#include <vector>

#include "nlsob/grid.hpp"

namespace nlsob {

/// {0} (the cell itself) followed by the dyadic radii h_min * 2^j up to the
/// box diameter.
std::vector<double> maximal_radii(const Grid& grid);

/// Centred maximal function over lattice balls clipped to the box, each
/// average taken over the in-box cells.
std::vector<double> hl_maximal_values(const Grid& grid, std::span<const double> v, std::span<const double> radii);
SampledField hl_maximal(const SampledField& f, std::span<const double> radii);

/// Serial direct-loop version kept as a reference for the parallel kernel.
std::vector<double> hl_maximal_reference(const Grid& grid, std::span<const double> v,
                                         std::span<const double> radii);

/// A maximal operator acting on full-grid value arrays.
using MaximalOperator = std::function<std::vector<double>(std::span<const double>)>;

MaximalOperator centered_ball_maximal(const Grid& grid);

}  // namespace nlsob
