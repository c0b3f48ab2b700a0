#include "nlsob_verify/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace nlsob::oracle {

std::size_t Box::cells() const {
  std::size_t c = 1;
  for (int k : n) c *= static_cast<std::size_t>(k);
  return c;
}

double Box::volume() const {
  double v = 1.0;
  for (int a = 0; a < dim(); ++a) v *= h(a);
  return v;
}

std::vector<int> Box::index(std::size_t c) const {
  std::vector<int> idx(n.size());
  for (int a = 0; a < dim(); ++a) {
    idx[a] = static_cast<int>(c % static_cast<std::size_t>(n[a]));
    c /= static_cast<std::size_t>(n[a]);
  }
  return idx;
}

std::vector<double> Box::center(std::size_t c) const {
  const auto idx = index(c);
  std::vector<double> x(n.size());
  for (int a = 0; a < dim(); ++a) x[a] = lo[a] + (idx[a] + 0.5) * h(a);
  return x;
}

namespace {

double ball_volume(int n) {
  switch (n) {
    case 1: return 2.0;
    case 2: return std::numbers::pi;
    case 3: return 4.0 * std::numbers::pi / 3.0;
    default: throw std::invalid_argument("oracle supports dimensions 1 to 3");
  }
}

double sphere_area(int n) {
  switch (n) {
    case 1: return 2.0;
    case 2: return 2.0 * std::numbers::pi;
    case 3: return 4.0 * std::numbers::pi;
    default: throw std::invalid_argument("oracle supports dimensions 1 to 3");
  }
}

double moment_by_quadrature(double p, int n) {
  if (n == 1) return 2.0;
  if (n == 2)
    return integrate([p](double t) { return std::pow(std::abs(std::cos(t)), p); }, 0.0, 2.0 * std::numbers::pi,
                     4000);
  if (n == 3) return 2.0 * std::numbers::pi * integrate([p](double u) { return std::pow(std::abs(u), p); }, -1.0, 1.0, 4000);
  throw std::invalid_argument("oracle supports dimensions 1 to 3");
}

double cell_radius(const Box& box) { return std::pow(box.volume() / ball_volume(box.dim()), 1.0 / box.dim()); }

}  // namespace

double gagliardo_sum(const Box& box, const std::vector<double>& f, const std::vector<std::uint8_t>& inside, double s,
                     double p, bool ball, const std::vector<double>& grad_mag) {
  const int n = box.dim();
  const double dv = box.volume();
  double total = 0.0;
  for (std::size_t x = 0; x < box.cells(); ++x) {
    if (!inside[x]) continue;
    const auto ix = box.index(x);
    for (std::size_t y = 0; y < box.cells(); ++y) {
      if (!inside[y] || x == y) continue;
      const auto iy = box.index(y);
      double d2 = 0.0;
      for (int a = 0; a < n; ++a) d2 += std::pow((iy[a] - ix[a]) * box.h(a), 2);
      total += std::pow(std::abs(f[x] - f[y]), p) / std::pow(std::sqrt(d2), n + s * p) * dv * dv;
    }
    if (ball) {
      const double rho = cell_radius(box);
      total += std::pow(grad_mag[x], p) * moment_by_quadrature(p, n) * std::pow(rho, p * (1.0 - s)) /
               (p * (1.0 - s)) * dv;
    }
  }
  return total;
}

std::vector<double> bsvy_inner(const Box& box, const std::vector<double>& f, const std::vector<double>& gradient,
                               const std::vector<std::uint8_t>& inside, double gamma, double p, double lambda,
                               bool ball, int q, int R) {
  const int n = box.dim();
  const double dv = box.volume();
  std::vector<double> out(box.cells(), 0.0);
  for (std::size_t x = 0; x < box.cells(); ++x) {
    if (!inside[x]) continue;
    const auto ix = box.index(x);
    double acc = 0.0;
    for (std::size_t y = 0; y < box.cells(); ++y) {
      if (!inside[y] || x == y) continue;
      const auto iy = box.index(y);
      int cheb = 0;
      for (int a = 0; a < n; ++a) cheb = std::max(cheb, std::abs(iy[a] - ix[a]));
      const bool split = q > 1 && cheb <= R;
      const int qq = split ? q : 1;
      int subs = 1;
      for (int a = 0; a < n; ++a) subs *= qq;
      for (int j = 0; j < subs; ++j) {
        std::vector<int> sub(n);
        int rest = j;
        for (int a = 0; a < n; ++a) {
          sub[a] = rest % qq;
          rest /= qq;
        }
        double fy = f[y];
        double d2 = 0.0;
        for (int a = 0; a < n; ++a) {
          const double delta = split ? ((sub[a] + 0.5) / q - 0.5) * box.h(a) : 0.0;
          fy += split ? gradient[y * n + a] * delta : 0.0;
          const double t = (iy[a] - ix[a]) * box.h(a) + delta;
          d2 += t * t;
        }
        const double d = std::sqrt(d2);
        if (std::abs(f[x] - fy) > lambda * std::pow(d, 1.0 + gamma / p)) acc += std::pow(d, gamma - n) * dv / subs;
      }
    }
    if (ball) {
      double g2 = 0.0;
      for (int a = 0; a < n; ++a) g2 += gradient[x * n + a] * gradient[x * n + a];
      const double r = cell_radius(box);
      const double cap = std::pow(r, gamma), slope = std::pow(std::sqrt(g2) / lambda, p);
      // Radial integral of rho^{gamma-1} over the part of (0, r) inside the level set, per direction.
      auto radial = [&](double u) {
        const double b = slope * std::pow(std::abs(u), p);
        return gamma > 0.0 ? std::min(cap, b) / gamma : std::max(0.0, b - cap) / -gamma;
      };
      // The integrand has kinks where slope |theta_1|^p = cap; integrate between them.
      const double uk = slope > 0.0 ? std::pow(cap / slope, 1.0 / p) : 2.0;
      if (n == 1) {
        acc += radial(1.0) + radial(-1.0);
      } else if (n == 2) {
        std::vector<double> cuts{0.0, 2.0 * std::numbers::pi};
        if (uk < 1.0) {
          const double t = std::acos(uk);
          for (double c : {t, std::numbers::pi - t, std::numbers::pi + t, 2.0 * std::numbers::pi - t}) cuts.push_back(c);
        }
        std::sort(cuts.begin(), cuts.end());
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
          acc += integrate([&](double t) { return radial(std::cos(t)); }, cuts[i], cuts[i + 1], 200);
      } else {
        std::vector<double> cuts{-1.0, 1.0};
        if (uk < 1.0) cuts = {-1.0, -uk, uk, 1.0};
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
          acc += 2.0 * std::numbers::pi * integrate(radial, cuts[i], cuts[i + 1], 200);
      }
    }
    out[x] = acc;
  }
  return out;
}

double bbm_morrey(const Box& box, const std::vector<double>& f, double q, double p, double r, double tau,
                  int nu_min, int nu_max) {
  const int n = box.dim();
  double outer = 0.0;
  for (int nu = nu_min; nu <= nu_max; ++nu) {
    const double side = std::pow(2.0, nu);
    std::vector<long long> m0(n), m1(n);
    for (int a = 0; a < n; ++a) {
      m0[a] = static_cast<long long>(std::floor(box.lo[a] / side)) - 1;
      m1[a] = static_cast<long long>(std::ceil(box.hi[a] / side)) + 1;
    }
    std::vector<long long> m(m0);
    double inner = 0.0;
    while (true) {
      double mass = 0.0;
      for (std::size_t c = 0; c < box.cells(); ++c) {
        const auto idx = box.index(c);
        double overlap = 1.0;
        for (int a = 0; a < n && overlap > 0.0; ++a) {
          const double c0 = box.lo[a] + idx[a] * box.h(a);
          const double c1 = box.lo[a] + (idx[a] + 1) * box.h(a);
          overlap *= std::max(0.0, std::min(c1, (m[a] + 1) * side) - std::max(c0, m[a] * side));
        }
        mass += std::pow(std::abs(f[c]), q) * overlap;
      }
      if (mass > 0.0) {
        const double term = std::pow(std::pow(side, n), 1.0 / p - 1.0 / q) * std::pow(mass, 1.0 / q);
        inner = std::isinf(r) ? std::max(inner, term) : inner + std::pow(term, r);
      }
      int a = 0;
      for (; a < n; ++a) {
        if (++m[a] <= m1[a]) break;
        m[a] = m0[a];
      }
      if (a == n) break;
    }
    const double level = std::isinf(r) ? inner : std::pow(inner, 1.0 / r);
    outer = std::isinf(tau) ? std::max(outer, level) : outer + std::pow(level, tau);
  }
  return std::isinf(tau) ? outer : std::pow(outer, 1.0 / tau);
}

double herz_local(const Box& box, const std::vector<double>& f, double p, double q, double a,
                  const std::vector<double>& xi) {
  std::map<int, double> shells;
  for (std::size_t c = 0; c < box.cells(); ++c) {
    if (f[c] == 0.0) continue;
    const auto x = box.center(c);
    double d = 0.0;
    for (int k = 0; k < box.dim(); ++k) {
      const double xk = xi.size() == 1 ? xi[0] : xi[k];
      d += (x[k] - xk) * (x[k] - xk);
    }
    d = std::sqrt(d);
    if (d == 0.0) d = 0.5 * cell_radius(box);
    int k = -200;
    while (!(std::ldexp(1.0, k - 1) <= d && d < std::ldexp(1.0, k))) ++k;
    shells[k] += std::pow(std::abs(f[c]), p) * box.volume();
  }
  double total = 0.0;
  for (const auto& [k, mass] : shells) total += std::pow(std::pow(std::ldexp(1.0, k), a) * std::pow(mass, 1.0 / p), q);
  return std::pow(total, 1.0 / q);
}

double lebesgue(const Box& box, const std::vector<double>& f, double p) {
  double total = 0.0;
  for (double v : f) total += std::pow(std::abs(v), p);
  return std::pow(total * box.volume(), 1.0 / p);
}

double lorentz(const Box& box, const std::vector<double>& f, double r, double tau) {
  std::vector<double> v;
  for (double x : f) v.push_back(std::abs(x));
  std::sort(v.begin(), v.end(), std::greater<>());
  double total = 0.0, t = 0.0;
  for (double x : v) {
    const double t1 = t + box.volume();
    total += std::pow(x, tau) * (r / tau) * (std::pow(t1, tau / r) - std::pow(t, tau / r));
    t = t1;
  }
  return std::pow(total, 1.0 / tau);
}

double integrate(const std::function<double(double)>& g, double a, double b, int panels) {
  static const double nodes[5] = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                  0.9061798459386640};
  static const double weights[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                    0.4786286704993665, 0.2369268850561891};
  const double w = (b - a) / panels;
  double total = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double mid = a + (i + 0.5) * w;
    for (int k = 0; k < 5; ++k) total += weights[k] * g(mid + 0.5 * w * nodes[k]) * 0.5 * w;
  }
  return total;
}

double bisect_root(const std::function<double(double)>& g, double lo, double hi, double tol) {
  for (int it = 0; it < 400 && hi - lo > tol * std::max(1.0, std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double interval_maximal_1d(double x, double a, double b) {
  double best = 0.0;
  for (int i = 0; i <= 200000; ++i) {
    const double r = 1e-4 * std::pow(10.0, 5.0 * i / 200000.0);
    const double overlap = std::max(0.0, std::min(b, x + r) - std::max(a, x - r));
    best = std::max(best, overlap / (2.0 * r));
  }
  return best;
}

}  // namespace nlsob::oracle
