#include "nlsob/rubio.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nlsob/norms.hpp"
#include "nlsob/reduce.hpp"
#include "nlsob/spec_text.hpp"

namespace nlsob {

OpnormEstimate estimate_maximal_opnorm(const SpaceSpec& space, const std::vector<SampledField>& probes,
                                       const MaximalOperator& maximal) {
  if (probes.empty()) throw SpecError("estimate_maximal_opnorm: empty probe family");
  OpnormEstimate out;
  for (std::size_t k = 0; k < probes.size(); ++k) {
    const auto& g = probes[k];
    const double den = norm_values(g.grid, g.values, space);
    if (!(den > 0.0)) throw SpecError("estimate_maximal_opnorm: probe has zero norm");
    const auto mg = maximal(g.values);
    const double ratio = norm_values(g.grid, mg, space) / den;
    if (ratio > out.value) {
      out.value = ratio;
      out.best_probe = k;
    }
  }
  return out;
}

RubioResult rubio_de_francia(const SampledField& g, const SpaceSpec& space, double opnorm_bound, int depth,
                             const MaximalOperator& maximal) {
  if (!(opnorm_bound > 0.0) || !std::isfinite(opnorm_bound))
    throw SpecError("rubio_de_francia: operator-norm bound must be positive");
  if (depth < 1) throw SpecError("rubio_de_francia: depth must be >= 1");
  std::vector<double> term(g.values.size());
  bool nonzero = false;
  for (std::size_t i = 0; i < term.size(); ++i) {
    term[i] = std::abs(g.values[i]);
    nonzero = nonzero || term[i] != 0.0;
  }
  if (!nonzero) throw SpecError("rubio_de_francia: g vanishes identically");

  const double ratio = 1.0 / (2.0 * opnorm_bound);
  std::vector<double> sum(term);
  std::vector<double> iterate(term);  // M^k g
  double scale = 1.0;
  for (int k = 1; k <= depth + 1; ++k) {
    iterate = maximal(iterate);
    if (k <= depth) {
      scale *= ratio;
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += scale * iterate[i];
    }
    for (double x : iterate)
      if (!std::isfinite(x)) throw std::runtime_error("rubio_de_francia: non-finite iterate");
  }

  RubioResult out;
  out.opnorm_bound = opnorm_bound;
  out.depth = depth;
  double tail = 0.0, peak = 0.0;
  for (std::size_t i = 0; i < sum.size(); ++i) {
    tail = std::max(tail, iterate[i] * scale);
    peak = std::max(peak, sum[i]);
  }
  out.tail_max = tail;
  out.running_norm = 2.0 * opnorm_bound * peak;
  out.eps = std::ldexp(out.running_norm, -(depth + 1));
  out.weight = explicit_weight(g.grid, std::move(sum));
  out.space_ratio = norm_values(g.grid, out.weight.samples, space) / norm_values(g.grid, g.values, space);
  out.space_bound_holds = out.space_ratio <= 2.0 * (1.0 + 1e-12);
  return out;
}

double rubio_domination_margin(const RubioResult& r, const MaximalOperator& maximal) {
  const auto& w = r.weight.samples;
  const auto mr = maximal(w);
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < w.size(); ++i)
    worst = std::max(worst, mr[i] - 2.0 * r.opnorm_bound * w[i] - r.eps);
  return worst;
}

DualityBound weighted_norm_duality_bound(const SampledField& f, const SpaceSpec& space, double p,
                                         const DomainMask& omega, const SampledField& g, double opnorm_bound,
                                         int depth, const MaximalOperator& maximal) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw SpecError("duality bound: p must lie in [1, inf)");
  require_same_grid(f.grid, g.grid, "duality bound");
  const SpaceSpec inner = convexify(space, 1.0 / p);
  const SpaceSpec dual = associate_space(inner, f.grid);
  const double gn = norm_values(g.grid, g.values, dual);
  if (std::abs(gn - 1.0) > 1e-9) throw SpecError("duality bound: witness is not normalised");

  DualityBound out;
  const auto v = restrict_values(f, omega);
  out.norm = norm_values(f.grid, v, space);
  bool zero = true;
  for (double x : v) zero = zero && x == 0.0;
  if (zero) {
    out.upper_holds = true;
    return out;
  }
  const RubioResult r = rubio_de_francia(g, dual, opnorm_bound, depth, maximal);
  std::vector<double> a(v.size()), b(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double fp = std::pow(std::abs(v[i]), p);
    a[i] = fp * std::abs(g.values[i]);
    b[i] = fp * r.weight.samples[i];
  }
  const double dv = f.grid.cell_volume();
  out.witness_pairing = std::pow(pairwise_sum(a) * dv, 1.0 / p);
  out.rubio_pairing = std::pow(pairwise_sum(b) * dv, 1.0 / p);
  out.upper_holds = out.rubio_pairing <= std::pow(2.0, 1.0 / p) * out.norm * (1.0 + 1e-12);
  return out;
}

}  // namespace nlsob
