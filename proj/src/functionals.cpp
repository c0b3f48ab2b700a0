#include "nlsob/functionals.hpp"

#include <algorithm>
#include <cmath>

#include "nlsob/field_ops.hpp"
#include "nlsob/norms.hpp"
#include "nlsob/reduce.hpp"
#include "nlsob/spec_text.hpp"

namespace nlsob {

double bbm_constant(double p, int n) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw SpecError("bbm_constant: p must lie in [1, inf)");
  if (n < 1) throw SpecError("bbm_constant: n must be >= 1");
  return sphere_moment(p, n) / p;
}

std::vector<double> gagliardo_field(const SampledField& f, double s, double p, const DomainMask& omega,
                                    Diagonal diagonal) {
  require_same_grid(f.grid, omega.grid, "gagliardo");
  std::vector<double> grad;
  if (diagonal == Diagonal::equivalent_ball) grad = magnitude(f.grid, gradient_or_fd(f));
  return gagliardo_rows(f.grid, f.values, omega, s, p, diagonal, grad);
}

double gagliardo_seminorm(const SampledField& f, double s, double p, const DomainMask& omega, Diagonal diagonal) {
  const auto rows = gagliardo_field(f, s, p, omega, diagonal);
  return std::pow(pairwise_sum(rows) * f.grid.cell_volume(), 1.0 / p);
}

double bbm_scaled_value(const SampledField& f, double s, double p, const SpaceSpec& space, const DomainMask& omega,
                        Diagonal diagonal) {
  auto rows = gagliardo_field(f, s, p, omega, diagonal);
  for (double& r : rows) r = std::pow(r, 1.0 / p);
  return std::pow(1.0 - s, 1.0 / p) * norm_values(f.grid, rows, space);
}

std::vector<double> default_s_grid() { return {0.60, 0.70, 0.80, 0.875, 0.925, 0.95}; }

Extrapolation bbm_limit_extrapolate(std::span<const std::pair<double, double>> samples) {
  if (samples.size() < 3) throw SpecError("bbm_limit_extrapolate: need at least 3 points");
  std::vector<std::pair<double, double>> pts(samples.begin(), samples.end());
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (pts[i].first == pts[i - 1].first) throw SpecError("bbm_limit_extrapolate: s values must be distinct");
  pts.resize(3);
  double mt = 0.0, mv = 0.0;
  for (const auto& [s, v] : pts) {
    mt += 1.0 - s;
    mv += v;
  }
  mt /= 3.0;
  mv /= 3.0;
  double stt = 0.0, stv = 0.0;
  for (const auto& [s, v] : pts) {
    const double t = 1.0 - s - mt;
    stt += t * t;
    stv += t * (v - mv);
  }
  Extrapolation out;
  out.slope = stv / stt;
  out.limit = mv - out.slope * mt;
  double rss = 0.0;
  for (const auto& [s, v] : pts) {
    const double e = v - (out.limit + out.slope * (1.0 - s));
    rss += e * e;
    out.s_used.push_back(s);
  }
  out.residual = std::sqrt(rss / 3.0);
  return out;
}

double sobolev_norm(const SampledField& f, const SpaceSpec& space, const DomainMask& omega) {
  require_same_grid(f.grid, omega.grid, "sobolev_norm");
  const auto g = magnitude(f.grid, gradient_or_fd(f));
  std::vector<double> v(g.size(), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i)
    if (omega[i]) v[i] = g[i];
  return norm_values(f.grid, v, space);
}

}  // namespace nlsob
