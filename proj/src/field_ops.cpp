#include "nlsob/field_ops.hpp"

#include <cmath>

#include "nlsob/spec_text.hpp"

namespace nlsob {

SampledField truncate(const SampledField& f, double m) {
  if (!(m > 0.0)) throw SpecError("truncate: m must be positive");
  std::vector<double> out(f.values);
  for (double& v : out) {
    if (std::abs(v) > m) v = v > 0 ? m : -m;
  }
  return make_field(f.grid, std::move(out));
}

std::vector<double> gradient_fd(const SampledField& f) {
  const Grid& g = f.grid;
  const int n = g.dim();
  for (int a = 0; a < n; ++a) {
    if (g.points(a) < 3) throw SpecError("gradient_fd: need at least three points per axis");
  }
  std::vector<double> grad(g.size() * n);
  const auto& v = f.values;
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (int a = 0; a < n; ++a) {
      const int k = g.index(i, a);
      const std::size_t s = g.stride(a);
      const int last = g.points(a) - 1;
      const double inv = 1.0 / (2.0 * g.h(a));
      double d;
      if (k == 0) {
        d = (-3.0 * v[i] + 4.0 * v[i + s] - v[i + 2 * s]) * inv;
      } else if (k == last) {
        d = (3.0 * v[i] - 4.0 * v[i - s] + v[i - 2 * s]) * inv;
      } else {
        d = (v[i + s] - v[i - s]) * inv;
      }
      grad[i * n + a] = d;
    }
  }
  return grad;
}

std::vector<double> gradient_or_fd(const SampledField& f) {
  if (f.gradient) return *f.gradient;
  return gradient_fd(f);
}

std::vector<double> magnitude(const Grid& grid, const std::vector<double>& vec) {
  const int n = grid.dim();
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double s = 0.0;
    for (int a = 0; a < n; ++a) s += vec[i * n + a] * vec[i * n + a];
    out[i] = n == 1 ? std::abs(vec[i]) : std::sqrt(s);
  }
  return out;
}

SampledField gradient_magnitude_field(const SampledField& f) {
  return make_field(f.grid, magnitude(f.grid, gradient_or_fd(f)));
}

SampledField abs_field(const SampledField& f) {
  std::vector<double> out(f.values);
  for (double& v : out) v = std::abs(v);
  return make_field(f.grid, std::move(out));
}

SampledField scaled(const SampledField& f, double c) {
  std::vector<double> out(f.values);
  for (double& v : out) v *= c;
  std::optional<std::vector<double>> grad;
  if (f.gradient) {
    grad = *f.gradient;
    for (double& v : *grad) v *= c;
  }
  return make_field(f.grid, std::move(out), std::move(grad));
}

SampledField pow_abs(const SampledField& f, double exponent) {
  std::vector<double> out(f.values);
  for (double& v : out) v = std::pow(std::abs(v), exponent);
  return make_field(f.grid, std::move(out));
}

}  // namespace nlsob
