#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nlsob/grid.hpp"

namespace nlsob {

/// |x - center|^a. Canonical text `power:a=-0.5,center=0`.
struct PowerWeight {
  double a = 0.0;
  std::vector<double> center;

  static PowerWeight parse(std::string_view text);
  std::string to_string() const;
  double center_coord(int axis) const;
  double at(std::span<const double> x) const;
};

/// Nonnegative sampled weight. Parametric power weights keep their closed
/// form so cube suprema can be taken exactly.
struct Weight {
  Grid grid;
  std::vector<double> samples;
  std::optional<PowerWeight> power;
};

/// Cells whose centre hits the singularity take the average of |x-c|^a over
/// the volume-matched ball, n/(n+a) * r_cell^a.
Weight sample_weight(const PowerWeight& w, const Grid& grid);
/// Throws on negative, non-finite or identically-zero samples.
Weight explicit_weight(const Grid& grid, std::vector<double> samples);
Weight unit_weight(const Grid& grid);

/// omega^{1-p'} cell-wise; throws on zero cells. p in (1, inf).
Weight dual_weight(const Weight& w, double p);

double conjugate_exponent(double p);

}  // namespace nlsob
