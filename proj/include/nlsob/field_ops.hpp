#pragma once

#include <vector>

#include "nlsob/grid.hpp"

namespace nlsob {

/// f_m = f where |f| <= m, m * f/|f| otherwise. Drops gradient metadata.
SampledField truncate(const SampledField& f, double m);

/// Second-order finite differences: central in the interior, one-sided
/// three-point stencils at the boundary. Cell-major, dim components per cell.
/// Requires at least three points per axis.
std::vector<double> gradient_fd(const SampledField& f);

/// Analytic gradient when the field carries one, finite differences otherwise.
std::vector<double> gradient_or_fd(const SampledField& f);

/// Euclidean magnitude per cell of a cell-major vector field.
std::vector<double> magnitude(const Grid& grid, const std::vector<double>& vec);

/// |f| with the closed-form gradient magnitude dropped into a plain field.
SampledField gradient_magnitude_field(const SampledField& f);

SampledField abs_field(const SampledField& f);
SampledField scaled(const SampledField& f, double c);
SampledField pow_abs(const SampledField& f, double exponent);

}  // namespace nlsob
