#include "nlsob/weight.hpp"

#include <cmath>
#include <limits>

#include "nlsob/spec_text.hpp"

namespace nlsob {

PowerWeight PowerWeight::parse(std::string_view text) {
  const auto t = SpecText::parse(text);
  if (t.tag() != "power") throw SpecError("weight: only power weights are supported");
  PowerWeight w;
  w.a = t.number("a");
  w.center = t.vector_or("center", {});
  if (!std::isfinite(w.a)) throw SpecError("weight: exponent must be finite");
  t.expect_consumed();
  return w;
}

std::string PowerWeight::to_string() const {
  return "power:a=" + format_number(a) + ",center=" + (center.empty() ? "0" : format_vector(center));
}

double PowerWeight::center_coord(int axis) const {
  if (center.empty()) return 0.0;
  if (center.size() == 1) return center[0];
  return center.at(axis);
}

double PowerWeight::at(std::span<const double> x) const {
  double r2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - center_coord(static_cast<int>(i));
    r2 += d * d;
  }
  return std::pow(std::sqrt(r2), a);
}

Weight sample_weight(const PowerWeight& w, const Grid& grid) {
  const int n = grid.dim();
  if (!(w.a > -n)) throw SpecError("weight: |x|^a needs a > -n to be locally integrable");
  std::vector<double> samples(grid.size());
  std::vector<double> x(n);
  const double at_singularity = n / (n + w.a) * std::pow(grid.cell_radius(), w.a);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid.center(i, x);
    double r2 = 0.0;
    for (int k = 0; k < n; ++k) r2 += (x[k] - w.center_coord(k)) * (x[k] - w.center_coord(k));
    samples[i] = r2 == 0.0 ? at_singularity : std::pow(std::sqrt(r2), w.a);
  }
  return Weight{grid, std::move(samples), w};
}

Weight explicit_weight(const Grid& grid, std::vector<double> samples) {
  if (samples.size() != grid.size()) throw SpecError("weight: sample count does not match grid");
  bool any = false;
  for (double v : samples) {
    if (!std::isfinite(v) || v < 0.0) throw SpecError("weight: samples must be finite and nonnegative");
    any = any || v > 0.0;
  }
  if (!any) throw SpecError("weight: identically zero");
  return Weight{grid, std::move(samples), std::nullopt};
}

Weight unit_weight(const Grid& grid) {
  return Weight{grid, std::vector<double>(grid.size(), 1.0), PowerWeight{0.0, {}}};
}

double conjugate_exponent(double p) {
  if (p == 1.0) return std::numeric_limits<double>::infinity();
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

Weight dual_weight(const Weight& w, double p) {
  if (!(p > 1.0) || std::isinf(p)) throw SpecError("dual_weight: p must lie in (1, inf)");
  const double e = 1.0 - conjugate_exponent(p);
  std::vector<double> out(w.samples.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!(w.samples[i] > 0.0)) throw SpecError("dual_weight: weight vanishes on a cell");
    out[i] = std::pow(w.samples[i], e);
  }
  std::optional<PowerWeight> power;
  if (w.power) power = PowerWeight{w.power->a * e, w.power->center};
  return Weight{w.grid, std::move(out), power};
}

}  // namespace nlsob
