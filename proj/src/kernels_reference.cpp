// Direct serial loops: distances and powers recomputed for every pair.

#include <cmath>

#include "nlsob/kernels.hpp"
#include "nlsob/spec_text.hpp"

namespace nlsob {

namespace {

double lattice_distance(const Grid& grid, std::size_t x, std::size_t y) {
  double d2 = 0.0;
  for (int a = 0; a < grid.dim(); ++a) {
    const double t = std::abs(grid.index(x, a) - grid.index(y, a)) * grid.h(a);
    d2 += t * t;
  }
  return std::sqrt(d2);
}

}  // namespace

std::vector<double> gagliardo_rows_reference(const Grid& grid, std::span<const double> f, const DomainMask& omega,
                                             double s, double p, Diagonal diagonal,
                                             std::span<const double> grad_magnitude) {
  const int n = grid.dim();
  const double dv = grid.cell_volume();
  std::vector<double> out(grid.size(), 0.0);
  for (std::size_t x = 0; x < grid.size(); ++x) {
    if (!omega[x]) continue;
    double acc = 0.0;
    for (std::size_t y = 0; y < grid.size(); ++y) {
      if (!omega[y] || y == x) continue;
      const double d = lattice_distance(grid, x, y);
      acc += std::pow(std::abs(f[x] - f[y]), p) * (std::pow(d, -n - s * p) * dv);
    }
    if (diagonal == Diagonal::equivalent_ball) {
      const double rho = grid.cell_radius();
      acc += std::pow(grad_magnitude[x], p) * sphere_moment(p, n) * std::pow(rho, p * (1.0 - s)) / (p * (1.0 - s));
    }
    out[x] = acc;
  }
  return out;
}

std::vector<double> bsvy_rows_reference(const Grid& grid, std::span<const double> f,
                                        std::span<const double> gradient, const DomainMask& omega, double gamma,
                                        double p, const KernelPolicy& policy, std::span<const double> lambdas) {
  const int n = grid.dim();
  const int q = policy.subsample;
  const int R = policy.near_radius;
  const double dv = grid.cell_volume();
  int subs = 1;
  for (int a = 0; a < n; ++a) subs *= q;
  const bool ball = policy.diagonal == Diagonal::equivalent_ball;
  std::vector<double> out(lambdas.size() * grid.size(), 0.0);

  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    const double lambda = lambdas[k];
    for (std::size_t x = 0; x < grid.size(); ++x) {
      if (!omega[x]) continue;
      double acc = 0.0;
      for (std::size_t y = 0; y < grid.size(); ++y) {
        if (!omega[y] || y == x) continue;
        int cheb = 0;
        for (int a = 0; a < n; ++a) cheb = std::max(cheb, std::abs(grid.index(y, a) - grid.index(x, a)));
        if (q > 1 && cheb <= R) {
          for (int j = 0; j < subs; ++j) {
            double fy = f[y], d2 = 0.0;
            int rest = j;
            for (int a = 0; a < n; ++a) {
              const int sub = rest % q;
              rest /= q;
              const double delta = ((sub + 0.5) / q - 0.5) * grid.h(a);
              fy += gradient[y * n + a] * delta;
              const double t = (grid.index(y, a) - grid.index(x, a)) * grid.h(a) + delta;
              d2 += t * t;
            }
            const double d = std::sqrt(d2);
            if (std::abs(f[x] - fy) > lambda * std::pow(d, 1.0 + gamma / p))
              acc += std::pow(d, gamma - n) * dv / subs;
          }
        } else {
          const double d = lattice_distance(grid, x, y);
          if (std::abs(f[x] - f[y]) > lambda * std::pow(d, 1.0 + gamma / p)) acc += std::pow(d, gamma - n) * dv;
        }
      }
      if (ball) {
        double g2 = 0.0;
        for (int a = 0; a < n; ++a) g2 += gradient[x * n + a] * gradient[x * n + a];
        acc += linearized_diagonal(std::sqrt(g2), lambda, grid.cell_radius(), gamma, p, n);
      }
      out[k * grid.size() + x] = acc;
    }
  }
  return out;
}

}  // namespace nlsob
