#include "nlsob/weak_holder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nlsob/reduce.hpp"
#include "nlsob/spec_text.hpp"
#include "nlsob/weight.hpp"

namespace nlsob {

namespace {

struct Atom {
  double value;
  double mass;
};

// (|field|, mu-mass) for every off-diagonal pair in Omega with nonzero value.
std::vector<Atom> atoms(const PairField& F, const std::vector<double>& pair_mass) {
  std::vector<Atom> out;
  for (std::size_t i = 0; i < pair_mass.size(); ++i)
    if (pair_mass[i] > 0.0 && F.values[i] != 0.0) out.push_back({std::abs(F.values[i]), pair_mass[i]});
  std::sort(out.begin(), out.end(), [](const Atom& a, const Atom& b) { return a.value > b.value; });
  return out;
}

}  // namespace

WeakHolderResult weak_holder_check(const PairField& F, const PairField& G, double gamma,
                                   std::span<const double> weight, double p, const DomainMask& omega) {
  if (!(p > 1.0) || !std::isfinite(p)) throw SpecError("weak_holder: p must lie in (1, inf)");
  require_same_grid(F.grid, G.grid, "weak_holder");
  require_same_grid(F.grid, omega.grid, "weak_holder");
  const Grid& grid = F.grid;
  const std::size_t N = grid.size();
  if (F.values.size() != N * N || G.values.size() != N * N) throw SpecError("weak_holder: pair field size mismatch");
  if (weight.size() != N) throw SpecError("weak_holder: weight size mismatch");
  for (double v : F.values)
    if (!std::isfinite(v)) throw std::runtime_error("weak_holder: non-finite F");
  for (double v : G.values)
    if (!std::isfinite(v)) throw std::runtime_error("weak_holder: non-finite G");

  const int n = grid.dim();
  const double dv2 = grid.cell_volume() * grid.cell_volume();
  std::vector<double> mass(N * N, 0.0);
  for (std::size_t x = 0; x < N; ++x) {
    if (!omega[x]) continue;
    for (std::size_t y = 0; y < N; ++y) {
      if (y == x || !omega[y]) continue;
      double d2 = 0.0;
      for (int a = 0; a < n; ++a) {
        const double t = std::abs(grid.index(x, a) - grid.index(y, a)) * grid.h(a);
        d2 += t * t;
      }
      mass[x * N + y] = std::pow(std::sqrt(d2), gamma - n) * weight[x] * dv2;
    }
  }

  WeakHolderResult out;
  std::vector<double> terms(N * N);
  for (std::size_t i = 0; i < N * N; ++i) terms[i] = std::abs(F.values[i] * G.values[i]) * mass[i];
  out.lhs = pairwise_sum(terms);

  // sup over lambda of lambda mu(|F| > lambda)^{1/p}: approached from below
  // each distinct value v, giving v mu(|F| >= v)^{1/p}.
  const auto fa = atoms(F, mass);
  double cum = 0.0;
  for (std::size_t i = 0; i < fa.size();) {
    std::size_t j = i;
    while (j < fa.size() && fa[j].value == fa[i].value) cum += fa[j++].mass;
    out.weak_norm = std::max(out.weak_norm, fa[i].value * std::pow(cum, 1.0 / p));
    i = j;
  }

  // int_0^inf mu(|G| > xi)^{1/p'} dxi over the level steps of |G|.
  const double q = conjugate_exponent(p);
  const auto ga = atoms(G, mass);
  std::vector<double> steps;
  cum = 0.0;
  for (std::size_t i = 0; i < ga.size();) {
    std::size_t j = i;
    while (j < ga.size() && ga[j].value == ga[i].value) cum += ga[j++].mass;
    const double below = j < ga.size() ? ga[j].value : 0.0;
    steps.push_back((ga[i].value - below) * std::pow(cum, 1.0 / q));
    i = j;
  }
  out.layer_integral = pairwise_sum(steps);
  out.rhs = q * out.weak_norm * out.layer_integral;
  if (!std::isfinite(out.lhs) || !std::isfinite(out.rhs)) throw std::runtime_error("weak_holder: non-finite sides");
  out.ratio = out.rhs > 0.0 ? out.lhs / out.rhs : 0.0;
  out.pass = out.lhs <= out.rhs * (1.0 + 1e-12);
  return out;
}

}  // namespace nlsob
