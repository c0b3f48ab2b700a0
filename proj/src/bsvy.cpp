#include "nlsob/bsvy.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "nlsob/field_ops.hpp"
#include "nlsob/norms.hpp"
#include "nlsob/reduce.hpp"
#include "nlsob/spec_text.hpp"

namespace nlsob {

namespace {

std::vector<double> gradient_for(const SampledField& f, const BsvyParams& params, const KernelPolicy& policy) {
  const bool needs = policy.subsample > 1 || (policy.diagonal == Diagonal::equivalent_ball && params.gamma > 0.0);
  if (!needs) return {};
  return gradient_or_fd(f);
}

double gradient_sup(const SampledField& f, const DomainMask& omega) {
  const auto g = magnitude(f.grid, gradient_or_fd(f));
  double m = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (omega[i]) m = std::max(m, g[i]);
  return m;
}

bool all_zero(const SupReport& r) {
  return std::all_of(r.values.begin(), r.values.end(), [](double v) { return v == 0.0; });
}

}  // namespace

void BsvyParams::validate() const {
  if (gamma == 0.0 || !std::isfinite(gamma)) throw SpecError("bsvy: gamma must be finite and nonzero");
  if (!(p >= 1.0) || !std::isfinite(p)) throw SpecError("bsvy: p must lie in [1, inf)");
}

std::vector<double> default_lambda_grid(double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) scale = 1.0;
  std::vector<double> out(40);
  for (int k = 0; k < 40; ++k) out[k] = scale * std::pow(10.0, -3.0 + 7.0 * k / 39.0);
  return out;
}

std::vector<double> bsvy_inner_profile(const SampledField& f, std::span<const double> lambdas,
                                       const BsvyParams& params, const DomainMask& omega,
                                       const KernelPolicy& policy) {
  params.validate();
  require_same_grid(f.grid, omega.grid, "bsvy");
  const auto grad = gradient_for(f, params, policy);
  return bsvy_rows(f.grid, f.values, grad, omega, params.gamma, params.p, policy, lambdas);
}

SampledField bsvy_inner(const SampledField& f, double lambda, const BsvyParams& params, const DomainMask& omega,
                        const KernelPolicy& policy) {
  if (!(lambda > 0.0)) throw SpecError("bsvy_inner: lambda must be positive");
  const double l[1] = {lambda};
  return make_field(f.grid, bsvy_inner_profile(f, l, params, omega, policy));
}

double bsvy_functional(const SampledField& f, double lambda, const BsvyParams& params, const SpaceSpec& space,
                       const DomainMask& omega, const KernelPolicy& policy) {
  auto inner = bsvy_inner(f, lambda, params, omega, policy).values;
  for (double& v : inner) v = std::pow(v, 1.0 / params.p);
  return lambda * norm_values(f.grid, inner, space);
}

std::vector<SupReport> sweep_sup(const ProfileEvaluator& evaluate, std::size_t series, std::vector<double> lambdas) {
  if (lambdas.empty()) throw SpecError("lambda grid is empty");
  std::sort(lambdas.begin(), lambdas.end());
  lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());

  // lambda -> per-series value
  std::vector<std::pair<double, std::vector<double>>> table;
  auto add = [&](const std::vector<double>& fresh) {
    if (fresh.empty()) return;
    const auto vals = evaluate(fresh);
    for (std::size_t k = 0; k < fresh.size(); ++k) {
      std::vector<double> row(series);
      for (std::size_t s = 0; s < series; ++s) row[s] = vals[s][k];
      table.emplace_back(fresh[k], std::move(row));
    }
    std::sort(table.begin(), table.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  };
  auto argmax = [&](std::size_t s) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < table.size(); ++k)
      if (table[k].second[s] > table[best].second[s]) best = k;
    return best;
  };
  add(lambdas);

  const double step = lambdas.size() > 1 ? std::log(lambdas[1] / lambdas[0]) : std::log(10.0);
  const int extra = std::max(1, static_cast<int>(std::ceil(2.0 * std::log(10.0) / step)));
  bool low = false, high = false;
  for (std::size_t s = 0; s < series; ++s) {
    bool nonzero = false;
    for (const auto& row : table) nonzero = nonzero || row.second[s] != 0.0;
    if (!nonzero) continue;
    const std::size_t k = argmax(s);
    low = low || k == 0;
    high = high || k + 1 == table.size();
  }
  std::vector<double> fresh;
  if (low)
    for (int i = 1; i <= extra; ++i) fresh.push_back(table.front().first * std::exp(-step * i));
  if (high)
    for (int i = 1; i <= extra; ++i) fresh.push_back(table.back().first * std::exp(step * i));
  std::sort(fresh.begin(), fresh.end());
  add(fresh);

  std::set<double> mids;
  for (std::size_t s = 0; s < series; ++s) {
    const std::size_t k = argmax(s);
    if (k > 0) mids.insert(std::sqrt(table[k - 1].first * table[k].first));
    if (k + 1 < table.size()) mids.insert(std::sqrt(table[k].first * table[k + 1].first));
  }
  std::vector<double> refine;
  for (double m : mids) {
    const bool present = std::any_of(table.begin(), table.end(), [m](const auto& r) { return r.first == m; });
    if (!present) refine.push_back(m);
  }
  add(refine);

  std::vector<SupReport> out(series);
  for (std::size_t s = 0; s < series; ++s) {
    SupReport& r = out[s];
    for (const auto& row : table) {
      r.lambdas.push_back(row.first);
      r.values.push_back(row.second[s]);
    }
    const std::size_t k = argmax(s);
    r.sup = r.values[k];
    r.argmax = r.lambdas[k];
    r.extended = low || high;
    r.boundary = !all_zero(r) && (k == 0 || k + 1 == r.values.size());
    if (r.boundary) r.flags.push_back("argmax-at-boundary");
    if (all_zero(r)) r.flags.push_back("degenerate");
  }
  return out;
}

std::vector<SupReport> bsvy_sup(const SampledField& f, const BsvyParams& params,
                                const std::vector<SpaceSpec>& spaces, const DomainMask& omega,
                                const KernelPolicy& policy, std::vector<double> lambdas) {
  params.validate();
  if (spaces.empty()) throw SpecError("bsvy_sup: no spaces given");
  for (const auto& s : spaces) validate(s, f.grid.dim());
  if (lambdas.empty()) lambdas = default_lambda_grid(gradient_sup(f, omega));
  const auto grad = gradient_for(f, params, policy);
  const Grid& grid = f.grid;

  ProfileEvaluator eval = [&](std::span<const double> ls) {
    const auto rows = bsvy_rows(grid, f.values, grad, omega, params.gamma, params.p, policy, ls);
    std::vector<std::vector<double>> out(spaces.size(), std::vector<double>(ls.size()));
    std::vector<double> field(grid.size());
    for (std::size_t k = 0; k < ls.size(); ++k) {
      for (std::size_t i = 0; i < grid.size(); ++i) field[i] = std::pow(rows[k * grid.size() + i], 1.0 / params.p);
      for (std::size_t s = 0; s < spaces.size(); ++s) out[s][k] = ls[k] * norm_values(grid, field, spaces[s]);
    }
    return out;
  };
  auto reports = sweep_sup(eval, spaces.size(), std::move(lambdas));
  if (params.theorem_conditional())
    for (auto& r : reports) r.flags.push_back("theorem-conditional");
  return reports;
}

SupReport weak_product_quasinorm(const SampledField& f, const BsvyParams& params, const DomainMask& omega,
                                 const KernelPolicy& policy, std::vector<double> lambdas) {
  params.validate();
  if (lambdas.empty()) lambdas = default_lambda_grid(gradient_sup(f, omega));
  const auto grad = gradient_for(f, params, policy);
  const Grid& grid = f.grid;
  ProfileEvaluator eval = [&](std::span<const double> ls) {
    const auto rows = bsvy_rows(grid, f.values, grad, omega, params.gamma, params.p, policy, ls);
    std::vector<std::vector<double>> out(1, std::vector<double>(ls.size()));
    for (std::size_t k = 0; k < ls.size(); ++k) {
      const double mass = pairwise_sum(std::span<const double>(rows).subspan(k * grid.size(), grid.size()));
      out[0][k] = ls[k] * std::pow(mass * grid.cell_volume(), 1.0 / params.p);
    }
    return out;
  };
  return sweep_sup(eval, 1, std::move(lambdas)).front();
}

double weighted_mu_measure(const Grid& grid, const std::function<bool(std::size_t, std::size_t)>& pairs,
                           double gamma, std::span<const double> weight, const DomainMask& omega) {
  if (weight.size() != grid.size()) throw SpecError("weighted_mu_measure: weight size does not match grid");
  require_same_grid(grid, omega.grid, "weighted_mu_measure");
  const int n = grid.dim();
  const double dv = grid.cell_volume();
  std::vector<double> rows(grid.size(), 0.0);
  for (std::size_t x = 0; x < grid.size(); ++x) {
    if (!omega[x] || weight[x] == 0.0) continue;
    double acc = 0.0;
    for (std::size_t y = 0; y < grid.size(); ++y) {
      if (y == x || !omega[y] || !pairs(x, y)) continue;
      double d2 = 0.0;
      for (int a = 0; a < n; ++a) {
        const double t = std::abs(grid.index(x, a) - grid.index(y, a)) * grid.h(a);
        d2 += t * t;
      }
      acc += std::pow(std::sqrt(d2), gamma - n);
    }
    rows[x] = acc * weight[x];
  }
  return pairwise_sum(rows) * dv * dv;
}

}  // namespace nlsob
