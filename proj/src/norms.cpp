#include "nlsob/norms.hpp"

#include <cmath>
#include <random>

#include "nlsob/ball_sums.hpp"
#include "nlsob/reduce.hpp"
#include "nlsob/spec_text.hpp"

namespace nlsob {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<double> weight_samples(const space::WeightedLebesgue& s, const Grid& grid) {
  if (s.sampled) {
    require_same_grid(s.sampled->grid, grid, "weighted norm");
    return s.sampled->samples;
  }
  return sample_weight(s.power, grid).samples;
}

double pairing(const Grid& grid, std::span<const double> f, std::span<const double> g) {
  std::vector<double> terms(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) terms[i] = std::abs(f[i] * g[i]);
  return pairwise_sum(terms) * grid.cell_volume();
}

}  // namespace

double norm_values(const Grid& grid, std::span<const double> v, const SpaceSpec& spec) {
  validate(spec, grid.dim());
  return std::visit(
      overloaded{
          [&](const space::Lebesgue& s) { return lebesgue_norm(grid, v, s.p); },
          [&](const space::WeightedLebesgue& s) {
            return weighted_lebesgue_norm(grid, v, s.r, weight_samples(s, grid));
          },
          [&](const space::Lorentz& s) { return lorentz_norm(grid, v, s.r, s.tau); },
          [&](const space::Orlicz& s) { return luxemburg_norm(grid, v, s.phi); },
          [&](const space::OrliczSlice& s) { return orlicz_slice_norm(grid, v, s.phi, s.r, s.t); },
          [&](const space::Morrey& s) { return morrey_norm(grid, v, s.r, s.alpha, dyadic_radii(grid)).value; },
          [&](const space::BesovBourgainMorrey& s) {
            return bbm_morrey_norm(grid, v, s.q, s.p, s.r, s.tau, default_levels(grid));
          },
          [&](const space::HerzLocal& s) { return herz_local_norm(grid, v, s.p, s.q, s.omega, s.xi); },
          [&](const space::HerzGlobal& s) {
            return herz_global_norm(grid, v, s.p, s.q, s.omega, herz_xi_grid(grid, s.xi_stride)).value;
          },
          [&](const space::MixedNorm& s) { return mixed_norm(grid, v, s.r); },
          [&](const space::VariableLebesgue& s) {
            return variable_lebesgue_norm(grid, v, sample_exponent(s, grid));
          },
      },
      spec);
}

double norm(const SampledField& f, const SpaceSpec& spec, const DomainMask& omega) {
  require_same_grid(f.grid, omega.grid, "norm");
  return norm_values(f.grid, restrict_values(f, omega), spec);
}

double restriction_norm(std::span<const double> on_domain, const SpaceSpec& spec, const DomainMask& omega) {
  const SampledField extended = zero_extend(on_domain, omega);
  return norm_values(extended.grid, extended.values, spec);
}

AssociateEstimate associate_norm_empirical(const SampledField& f, const SpaceSpec& spec, const DomainMask& omega,
                                           std::size_t random_witnesses, std::uint64_t seed) {
  require_same_grid(f.grid, omega.grid, "associate norm");
  const Grid& grid = f.grid;
  const std::vector<double> v = restrict_values(f, omega);
  AssociateEstimate out;

  if (const auto* s = std::get_if<space::Lebesgue>(&spec); s && s->p > 1.0) {
    out.exact = lebesgue_norm(grid, v, conjugate_exponent(s->p));
  } else if (const auto* w = std::get_if<space::WeightedLebesgue>(&spec); w && w->r > 1.0) {
    const auto dual = associate_space(spec, grid);
    out.exact = norm_values(grid, v, dual);
  }

  std::vector<std::vector<double>> family;
  std::vector<double> exponents = {0.0, 0.25, 1.0 / 3.0, 0.5, 1.0, 2.0, 3.0, 4.0};
  if (const auto* s = std::get_if<space::Lebesgue>(&spec); s && s->p > 1.0)
    exponents.push_back(conjugate_exponent(s->p) - 1.0);
  if (const auto* s = std::get_if<space::WeightedLebesgue>(&spec); s && s->r > 1.0)
    exponents.push_back(conjugate_exponent(s->r) - 1.0);
  for (double e : exponents) {
    std::vector<double> g(v.size(), 0.0);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0.0) g[i] = std::pow(std::abs(v[i]), e);
    family.push_back(std::move(g));
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t k = 0; k < random_witnesses; ++k) {
    std::vector<double> g(v.size(), 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double u = unit(rng);
      if (omega[i]) g[i] = u;
    }
    family.push_back(std::move(g));
  }

  for (std::size_t k = 0; k < family.size(); ++k) {
    const double gn = norm_values(grid, family[k], spec);
    if (!(gn > 0.0) || !std::isfinite(gn)) continue;
    ++out.witnesses;
    const double value = pairing(grid, v, family[k]) / gn;
    if (value > out.lower_bound) {
      out.lower_bound = value;
      out.best_witness = k;
    }
  }
  return out;
}

}  // namespace nlsob
