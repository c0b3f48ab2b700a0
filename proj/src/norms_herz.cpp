#include <algorithm>
#include <cmath>
#include <map>

#include "nlsob/norms.hpp"
#include "nlsob/reduce.hpp"
#include "nlsob/spec_text.hpp"

namespace nlsob {

namespace {

std::vector<double> broadcast_xi(std::span<const double> xi, int n) {
  if (xi.size() == 1) return std::vector<double>(static_cast<std::size_t>(n), xi[0]);
  if (static_cast<int>(xi.size()) != n) throw SpecError("herz: xi has the wrong dimension");
  return {xi.begin(), xi.end()};
}

void check_exponents(double p, double q) {
  if (!(p > 0.0) || !(q > 0.0) || !std::isfinite(p) || !std::isfinite(q))
    throw SpecError("herz: p and q must be finite and positive");
}

}  // namespace

int herz_annulus(const Grid& grid, std::span<const double> x, std::span<const double> xi) {
  double d2 = 0.0;
  for (int a = 0; a < grid.dim(); ++a) d2 += (x[a] - xi[a]) * (x[a] - xi[a]);
  double d = std::sqrt(d2);
  if (d < 1e-12 * grid.h_min()) d = 0.5 * grid.cell_radius();
  return static_cast<int>(std::floor(std::log2(d))) + 1;
}

double herz_local_norm(const Grid& grid, std::span<const double> v, double p, double q, const HerzWeight& omega,
                       std::span<const double> xi_in) {
  if (v.size() != grid.size()) throw SpecError("field size does not match grid");
  check_exponents(p, q);
  const auto xi = broadcast_xi(xi_in, grid.dim());
  std::map<int, std::vector<double>> shells;
  std::vector<double> x(static_cast<std::size_t>(grid.dim()));
  for (std::size_t c = 0; c < grid.size(); ++c) {
    if (v[c] == 0.0) continue;
    grid.center(c, x);
    shells[herz_annulus(grid, x, xi)].push_back(std::pow(std::abs(v[c]), p));
  }
  std::vector<double> terms;
  terms.reserve(shells.size());
  for (const auto& [k, cells] : shells) {
    const double lp = std::pow(pairwise_sum(cells) * grid.cell_volume(), 1.0 / p);
    terms.push_back(std::pow(omega(std::ldexp(1.0, k)) * lp, q));
  }
  return std::pow(pairwise_sum(terms), 1.0 / q);
}

std::vector<std::vector<double>> herz_xi_grid(const Grid& grid, int stride) {
  if (stride < 1) throw SpecError("herz-global: stride must be >= 1");
  const int n = grid.dim();
  std::vector<std::vector<double>> out;
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  while (true) {
    std::vector<double> xi(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) xi[a] = grid.axis_center(a, idx[a]);
    out.push_back(std::move(xi));
    int a = 0;
    for (; a < n; ++a) {
      idx[a] += stride;
      if (idx[a] < grid.points(a)) break;
      idx[a] = 0;
    }
    if (a == n) break;
  }
  bool origin_inside = true;
  for (int a = 0; a < n; ++a) origin_inside = origin_inside && grid.lo(a) <= 0.0 && 0.0 <= grid.hi(a);
  if (origin_inside) {
    const std::vector<double> origin(static_cast<std::size_t>(n), 0.0);
    if (std::find(out.begin(), out.end(), origin) == out.end()) out.push_back(origin);
  }
  return out;
}

HerzGlobalResult herz_global_norm(const Grid& grid, std::span<const double> v, double p, double q,
                                  const HerzWeight& omega, const std::vector<std::vector<double>>& xi_grid) {
  if (xi_grid.empty()) throw SpecError("herz-global: empty xi grid");
  std::vector<double> values(xi_grid.size());
  const auto count = static_cast<std::ptrdiff_t>(xi_grid.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < count; ++i)
    values[static_cast<std::size_t>(i)] = herz_local_norm(grid, v, p, q, omega, xi_grid[static_cast<std::size_t>(i)]);
  const auto it = std::max_element(values.begin(), values.end());
  return {*it, xi_grid[static_cast<std::size_t>(it - values.begin())]};
}

MoIndices mo_indices(const HerzWeight& omega) {
  if (!std::isfinite(omega.a)) throw SpecError("mo_indices: weight exponent must be finite");
  return {omega.a, omega.a, omega.a, omega.a};
}

bool local_herz_hypothesis(const HerzWeight& omega, int n, double p, double s) {
  const MoIndices m = mo_indices(omega);
  const double lo = -n / p, hi = n * (1.0 / s - 1.0 / p);
  return lo < m.m0 && m.m0 <= m.M0 && m.M0 < hi && lo < m.m_inf && m.m_inf <= m.M_inf && m.M_inf < hi;
}

}  // namespace nlsob
