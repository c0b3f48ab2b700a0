#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "nlsob/kernels.hpp"
#include "nlsob/spec_text.hpp"

namespace nlsob {

namespace {

struct CellIndex {
  std::vector<std::size_t> cells;
  std::vector<int> idx;  // dim ints per cell
};

CellIndex domain_cells(const Grid& grid, const DomainMask& omega) {
  CellIndex out;
  const int n = grid.dim();
  for (std::size_t c = 0; c < grid.size(); ++c) {
    if (!omega[c]) continue;
    out.cells.push_back(c);
    for (int a = 0; a < n; ++a) out.idx.push_back(grid.index(c, a));
  }
  return out;
}

double offset_distance(const Grid& grid, std::size_t off) {
  double d2 = 0.0;
  for (int a = 0; a < grid.dim(); ++a) {
    const double t = grid.index(off, a) * grid.h(a);
    d2 += t * t;
  }
  return std::sqrt(d2);
}

void check_inputs(const Grid& grid, std::span<const double> f, const DomainMask& omega) {
  if (f.size() != grid.size()) throw SpecError("kernel: field size does not match grid");
  require_same_grid(grid, omega.grid, "kernel");
}

// Number of leading lambdas with a > lambda_k * t.
std::size_t count_below(std::span<const double> lambdas, double a, double t) {
  std::size_t lo = 0, hi = lambdas.size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (a > lambdas[mid] * t)
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo;
}

struct GaussRule {
  std::vector<double> nodes, weights;  // on [-1, 1]
};

// Newton iteration on the Legendre recurrence.
GaussRule gauss_legendre(int m) {
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(m));
  rule.weights.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[static_cast<std::size_t>(i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

template <class F>
double integrate_panels(F&& g, double a, double b) {
  static const GaussRule rule = gauss_legendre(24);
  constexpr int panels = 4;
  if (!(b > a)) return 0.0;
  const double w = (b - a) / panels;
  double total = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double mid = a + (k + 0.5) * w;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) total += rule.weights[i] * g(mid + 0.5 * w * rule.nodes[i]);
  }
  return 0.5 * w * total;
}

}  // namespace

KernelPolicy KernelPolicy::defaults(double gamma) {
  if (gamma > 0.0) return {Diagonal::equivalent_ball, 1, 1};
  return {Diagonal::exclude, 4, 1};
}

KernelPolicy KernelPolicy::parse(std::string_view text) {
  const auto t = SpecText::parse(text);
  if (t.tag() != "policy") throw SpecError("expected a policy spec, got '" + t.tag() + "'");
  KernelPolicy out;
  const auto diag = t.text_or("diagonal", "ball");
  if (diag == "ball")
    out.diagonal = Diagonal::equivalent_ball;
  else if (diag == "exclude")
    out.diagonal = Diagonal::exclude;
  else
    throw SpecError("policy: diagonal must be 'ball' or 'exclude'");
  out.subsample = t.integer_or("subsample", 1);
  out.near_radius = t.integer_or("radius", 1);
  t.expect_consumed();
  if (out.subsample < 1) throw SpecError("policy: subsample must be >= 1");
  if (out.near_radius < 0) throw SpecError("policy: radius must be >= 0");
  return out;
}

std::string KernelPolicy::to_string() const {
  return std::string("policy:diagonal=") + (diagonal == Diagonal::exclude ? "exclude" : "ball") +
         ",subsample=" + std::to_string(subsample) + ",radius=" + std::to_string(near_radius);
}

double sphere_moment(double p, int n) {
  return 2.0 * std::pow(M_PI, 0.5 * (n - 1)) * std::tgamma(0.5 * (p + 1)) / std::tgamma(0.5 * (p + n));
}

double linearized_diagonal(double grad, double lambda, double r, double gamma, double p, int n) {
  if (gamma == 0.0) throw SpecError("linearized_diagonal: gamma must be nonzero");
  const double A = std::pow(r, gamma);
  const double B = std::pow(grad / lambda, p);
  if (B == 0.0) return 0.0;
  const double g = std::abs(gamma);
  // gamma > 0 keeps |z| below a radius, gamma < 0 above one; per direction the
  // radial integral is min(A, B u^p) / g or max(0, B u^p - A) / g, u = |theta_1|.
  if (n == 1) return 2.0 * (gamma > 0.0 ? std::min(A, B) : std::max(0.0, B - A)) / g;
  // With u = cos t the sphere measure is sigma_{n-2} sin^{n-2} t dt per hemisphere.
  const double u_star = std::pow(A / B, 1.0 / p);
  const double t_star = u_star >= 1.0 ? 0.0 : std::acos(u_star);
  const int e = n - 2;
  auto sin_pow = [e](double t) { return std::pow(std::sin(t), e); };
  auto cos_sin_pow = [e, p](double t) { return std::pow(std::cos(t), p) * std::pow(std::sin(t), e); };
  const double scale = 2.0 * unit_sphere_area(n - 1) / g;
  if (gamma > 0.0)
    return scale * (A * integrate_panels(sin_pow, 0.0, t_star) + B * integrate_panels(cos_sin_pow, t_star, 0.5 * M_PI));
  return scale * (B * integrate_panels(cos_sin_pow, 0.0, t_star) - A * integrate_panels(sin_pow, 0.0, t_star));
}

std::vector<double> gagliardo_rows(const Grid& grid, std::span<const double> f, const DomainMask& omega, double s,
                                   double p, Diagonal diagonal, std::span<const double> grad_magnitude) {
  check_inputs(grid, f, omega);
  if (!(s > 0.0 && s < 1.0)) throw SpecError("gagliardo: s must lie in (0, 1)");
  if (!(p >= 1.0) || !std::isfinite(p)) throw SpecError("gagliardo: p must lie in [1, inf)");
  if (diagonal == Diagonal::equivalent_ball && grad_magnitude.size() != grid.size())
    throw SpecError("gagliardo: ball correction needs the gradient magnitude");
  const int n = grid.dim();
  const double dv = grid.cell_volume();

  std::vector<double> kernel(grid.size(), 0.0);
  for (std::size_t off = 1; off < grid.size(); ++off)
    kernel[off] = std::pow(offset_distance(grid, off), -n - s * p) * dv;

  const double rho = grid.cell_radius();
  const double diag_factor =
      sphere_moment(p, n) * std::pow(rho, p * (1.0 - s)) / (p * (1.0 - s));

  const CellIndex dom = domain_cells(grid, omega);
  const auto m = static_cast<std::ptrdiff_t>(dom.cells.size());
  std::vector<double> out(grid.size(), 0.0);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < m; ++i) {
    const std::size_t x = dom.cells[static_cast<std::size_t>(i)];
    const int* ix = &dom.idx[static_cast<std::size_t>(i) * n];
    const double fx = f[x];
    double acc = 0.0;
    for (std::size_t j = 0; j < dom.cells.size(); ++j) {
      const int* iy = &dom.idx[j * n];
      std::size_t off = 0;
      for (int a = 0; a < n; ++a) off += static_cast<std::size_t>(std::abs(ix[a] - iy[a])) * grid.stride(a);
      if (off == 0) continue;
      const double diff = std::abs(fx - f[dom.cells[j]]);
      const double term = p == 1.0 ? diff : (p == 2.0 ? diff * diff : std::pow(diff, p));
      acc += term * kernel[off];
    }
    if (diagonal == Diagonal::equivalent_ball) acc += std::pow(grad_magnitude[x], p) * diag_factor;
    out[x] = acc;
  }
  return out;
}

std::vector<double> bsvy_rows(const Grid& grid, std::span<const double> f, std::span<const double> gradient,
                              const DomainMask& omega, double gamma, double p, const KernelPolicy& policy,
                              std::span<const double> lambdas) {
  check_inputs(grid, f, omega);
  if (gamma == 0.0 || !std::isfinite(gamma)) throw SpecError("bsvy: gamma must be finite and nonzero");
  if (!(p >= 1.0) || !std::isfinite(p)) throw SpecError("bsvy: p must lie in [1, inf)");
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    if (!(lambdas[k] > 0.0)) throw SpecError("bsvy: lambda must be positive");
    if (k > 0 && !(lambdas[k] > lambdas[k - 1])) throw SpecError("bsvy: lambdas must be strictly increasing");
  }
  const int n = grid.dim();
  const int q = policy.subsample;
  int widest = 1;
  for (int a = 0; a < n; ++a) widest = std::max(widest, grid.points(a));
  // Radii beyond the grid select every pair; clamping keeps the tables small.
  const int R = std::min(policy.near_radius, widest - 1);
  const bool subsample = q > 1;
  const bool ball = policy.diagonal == Diagonal::equivalent_ball;
  if ((subsample || ball) && gradient.size() != grid.size() * static_cast<std::size_t>(n))
    throw SpecError("bsvy: policy needs the gradient");
  const double dv = grid.cell_volume();
  const double exponent = 1.0 + gamma / p;

  std::vector<double> thresh(grid.size(), 0.0), kernel(grid.size(), 0.0);
  for (std::size_t off = 1; off < grid.size(); ++off) {
    const double d = offset_distance(grid, off);
    thresh[off] = std::pow(d, exponent);
    kernel[off] = std::pow(d, gamma - n) * dv;
  }

  // Sub-cell tables over signed offsets in [-R, R]^n and sub-points j.
  int subs = 1, span_w = 2 * R + 1;
  std::size_t offsets = 1;
  for (int a = 0; a < n; ++a) {
    subs *= q;
    offsets *= static_cast<std::size_t>(span_w);
  }
  std::vector<double> sub_delta, sub_thresh, sub_kernel;
  if (subsample) {
    sub_delta.resize(static_cast<std::size_t>(subs) * n);
    for (int j = 0; j < subs; ++j) {
      int rest = j;
      for (int a = 0; a < n; ++a) {
        const int k = rest % q;
        rest /= q;
        sub_delta[static_cast<std::size_t>(j) * n + a] = ((k + 0.5) / q - 0.5) * grid.h(a);
      }
    }
    sub_thresh.resize(offsets * subs);
    sub_kernel.resize(offsets * subs);
    for (std::size_t o = 0; o < offsets; ++o) {
      std::size_t rest = o;
      std::vector<int> delta(n);
      for (int a = 0; a < n; ++a) {
        delta[a] = static_cast<int>(rest % span_w) - R;
        rest /= span_w;
      }
      for (int j = 0; j < subs; ++j) {
        double d2 = 0.0;
        for (int a = 0; a < n; ++a) {
          const double t = delta[a] * grid.h(a) + sub_delta[static_cast<std::size_t>(j) * n + a];
          d2 += t * t;
        }
        const double d = std::sqrt(d2);
        sub_thresh[o * subs + j] = std::pow(d, exponent);
        sub_kernel[o * subs + j] = std::pow(d, gamma - n) * dv / subs;
      }
    }
  }

  const double r_cell = grid.cell_radius();

  const CellIndex dom = domain_cells(grid, omega);
  const std::size_t L = lambdas.size();
  const auto m = static_cast<std::ptrdiff_t>(dom.cells.size());
  std::vector<double> out(L * grid.size(), 0.0);
#pragma omp parallel
  {
    std::vector<double> hist(L + 1);
#pragma omp for schedule(dynamic, 8)
    for (std::ptrdiff_t i = 0; i < m; ++i) {
      std::fill(hist.begin(), hist.end(), 0.0);
      const std::size_t x = dom.cells[static_cast<std::size_t>(i)];
      const int* ix = &dom.idx[static_cast<std::size_t>(i) * n];
      const double fx = f[x];
      for (std::size_t jc = 0; jc < dom.cells.size(); ++jc) {
        const int* iy = &dom.idx[jc * n];
        const std::size_t y = dom.cells[jc];
        std::size_t off = 0, sub_off = 0, sub_mult = 1;
        int cheb = 0;
        for (int a = 0; a < n; ++a) {
          const int d = iy[a] - ix[a];
          off += static_cast<std::size_t>(std::abs(d)) * grid.stride(a);
          cheb = std::max(cheb, std::abs(d));
          sub_off += static_cast<std::size_t>(d + R) * sub_mult;
          sub_mult *= static_cast<std::size_t>(span_w);
        }
        if (off == 0) continue;
        if (subsample && cheb <= R) {
          const double* g = &gradient[y * n];
          for (int j = 0; j < subs; ++j) {
            double fy = f[y];
            for (int a = 0; a < n; ++a) fy += g[a] * sub_delta[static_cast<std::size_t>(j) * n + a];
            const std::size_t t = sub_off * subs + static_cast<std::size_t>(j);
            hist[count_below(lambdas, std::abs(fx - fy), sub_thresh[t])] += sub_kernel[t];
          }
        } else {
          hist[count_below(lambdas, std::abs(fx - f[y]), thresh[off])] += kernel[off];
        }
      }
      double grad = 0.0;
      if (ball) {
        for (int a = 0; a < n; ++a) grad += gradient[x * n + a] * gradient[x * n + a];
        grad = std::sqrt(grad);
      }
      double run = 0.0;
      for (std::size_t k = L; k-- > 0;) {
        run += hist[k + 1];
        double v = run;
        if (ball) v += linearized_diagonal(grad, lambdas[k], r_cell, gamma, p, n);
        out[k * grid.size() + x] = v;
      }
    }
  }
  return out;
}

}  // namespace nlsob
