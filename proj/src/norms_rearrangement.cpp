#include <algorithm>
#include <cmath>
#include <functional>

#include "nlsob/norms.hpp"
#include "nlsob/reduce.hpp"
#include "nlsob/spec_text.hpp"

namespace nlsob {

double Rearrangement::operator()(double t) const {
  const auto it = std::upper_bound(breaks.begin(), breaks.end(), t);
  if (it == breaks.end()) return 0.0;
  return values[static_cast<std::size_t>(it - breaks.begin())];
}

Rearrangement decreasing_rearrangement(const Grid& grid, std::span<const double> v) {
  if (v.size() != grid.size()) throw SpecError("field size does not match grid");
  std::vector<double> a;
  a.reserve(v.size());
  for (double x : v)
    if (x != 0.0) a.push_back(std::abs(x));
  std::sort(a.begin(), a.end(), std::greater<>());
  Rearrangement out;
  const double dv = grid.cell_volume();
  std::size_t count = 0;
  for (std::size_t i = 0; i < a.size();) {
    std::size_t j = i;
    while (j < a.size() && a[j] == a[i]) ++j;
    count += j - i;
    out.values.push_back(a[i]);
    out.breaks.push_back(static_cast<double>(count) * dv);
    i = j;
  }
  return out;
}

double lorentz_norm(const Grid& grid, std::span<const double> v, double r, double tau) {
  if (!(r > 0.0) || !(tau > 0.0) || !std::isfinite(r) || !std::isfinite(tau))
    throw SpecError("lorentz: r and tau must be finite and positive");
  const Rearrangement f = decreasing_rearrangement(grid, v);
  const double e = tau / r;
  std::vector<double> terms(f.values.size());
  double prev = 0.0;
  for (std::size_t k = 0; k < f.values.size(); ++k) {
    const double cur = std::pow(f.breaks[k], e);
    terms[k] = std::pow(f.values[k], tau) * (cur - prev);
    prev = cur;
  }
  return std::pow(pairwise_sum(terms) / e, 1.0 / tau);
}

}  // namespace nlsob
