#include <algorithm>
#include <cmath>
#include <random>

#include "nlsob/domain.hpp"
#include "nlsob/spec_text.hpp"

namespace nlsob {

namespace {

using Point = std::vector<double>;

double distance(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

struct Pair {
  Point x, y;
};

struct PairOutcome {
  double ratio = 0.0;   // certified curve-length lower bound over |x-y|/eps
  bool resolved = false;  // some candidate curve satisfied (i)-(iv)
};

class CurveChecker {
 public:
  CurveChecker(const DomainSpec& d, std::span<const double> lo, std::span<const double> hi,
               double eps, int points)
      : d_(d), lo_(lo), hi_(hi), eps_(eps), points_(points) {}

  /// Polyline x -> apex -> y (apex == nullptr for the straight segment).
  bool passes(const Point& x, const Point& y, const Point* apex) const {
    const double dxy = distance(x, y);
    const double len = apex ? distance(x, *apex) + distance(*apex, y) : dxy;
    if (len > dxy / eps_ * (1.0 + 1e-12)) return false;
    const int n = static_cast<int>(x.size());
    Point z(n);
    for (int k = 1; k < points_ - 1; ++k) {
      const double t = static_cast<double>(k) / (points_ - 1);
      if (apex) {
        const Point& a = t < 0.5 ? x : *apex;
        const Point& b = t < 0.5 ? *apex : y;
        const double s = t < 0.5 ? 2.0 * t : 2.0 * t - 1.0;
        for (int i = 0; i < n; ++i) z[i] = a[i] + s * (b[i] - a[i]);
      } else {
        for (int i = 0; i < n; ++i) z[i] = x[i] + t * (y[i] - x[i]);
      }
      if (!d_.contains(z, lo_, hi_)) return false;
      const double need = eps_ * distance(x, z) * distance(y, z) / dxy;
      if (d_.boundary_distance(z, lo_, hi_) < need * (1.0 - 1e-12)) return false;
    }
    return true;
  }

  Point inward(const Point& m, double step) const {
    const int n = static_cast<int>(m.size());
    Point g(n, 0.0), p = m, q = m;
    double norm = 0.0;
    for (int i = 0; i < n; ++i) {
      p[i] = m[i] + step;
      q[i] = m[i] - step;
      g[i] = d_.boundary_distance(p, lo_, hi_) - d_.boundary_distance(q, lo_, hi_);
      p[i] = q[i] = m[i];
      norm += g[i] * g[i];
    }
    norm = std::sqrt(norm);
    if (norm > 0) {
      for (double& v : g) v /= norm;
    }
    return g;
  }

 private:
  const DomainSpec& d_;
  std::span<const double> lo_, hi_;
  double eps_;
  int points_;
};

}  // namespace

EpsilonCertificate epsilon_falsifier(const DomainSpec& domain, std::span<const double> lo,
                                     std::span<const double> hi, double eps,
                                     const FalsifierOptions& options) {
  if (!(eps > 0.0 && eps <= 1.0)) throw SpecError("epsilon_falsifier: eps must lie in (0, 1]");
  if (options.samples == 0) throw SpecError("epsilon_falsifier: sample_count must be >= 1");
  if (options.curve_points < 3) throw SpecError("epsilon_falsifier: need at least 3 curve points");
  const int n = static_cast<int>(lo.size());
  double diam = 0.0;
  for (int a = 0; a < n; ++a) diam += (hi[a] - lo[a]) * (hi[a] - lo[a]);
  diam = std::sqrt(diam);
  const double min_scale = options.min_scale > 0 ? options.min_scale : diam / 1024.0;

  // Pairs are drawn serially so the certificate depends only on the seed.
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Pair> pairs;
  pairs.reserve(options.samples);
  const double log_lo = std::log(min_scale), log_hi = std::log(diam);
  for (std::size_t s = 0; s < options.samples; ++s) {
    Point x(n), y(n);
    bool found = false;
    for (int attempt = 0; attempt < 10000 && !found; ++attempt) {
      for (int a = 0; a < n; ++a) x[a] = lo[a] + unit(rng) * (hi[a] - lo[a]);
      if (!domain.contains(x, lo, hi)) continue;
      for (int inner = 0; inner < 64 && !found; ++inner) {
        const double d = std::exp(log_lo + unit(rng) * (log_hi - log_lo));
        double norm = 0.0;
        for (int a = 0; a < n; ++a) {
          y[a] = normal(rng);
          norm += y[a] * y[a];
        }
        norm = std::sqrt(norm);
        for (int a = 0; a < n; ++a) y[a] = x[a] + d * y[a] / norm;
        found = domain.contains(y, lo, hi) && distance(x, y) > 0.0;
      }
    }
    if (!found) throw SpecError("epsilon_falsifier: could not sample pairs inside the domain");
    pairs.push_back({std::move(x), std::move(y)});
  }

  const CurveChecker checker(domain, lo, hi, eps, options.curve_points);
  std::vector<PairOutcome> outcomes(pairs.size());
  const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(pairs.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    const auto& [x, y] = pairs[k];
    const double dxy = distance(x, y);
    PairOutcome out;
    out.ratio = domain.geodesic_lower_bound(x, y, lo, hi) * eps / dxy;
    if (checker.passes(x, y, nullptr)) {
      out.resolved = true;
    } else {
      Point mid(n);
      for (int a = 0; a < n; ++a) mid[a] = 0.5 * (x[a] + y[a]);
      std::vector<Point> dirs{checker.inward(mid, 1e-6 * diam)};
      if (n >= 2) {
        // Unit normals to (y - x) in the plane of the first two axes.
        Point nrm(n, 0.0);
        nrm[0] = -(y[1] - x[1]) / dxy;
        nrm[1] = (y[0] - x[0]) / dxy;
        dirs.push_back(nrm);
        for (double& v : nrm) v = -v;
        dirs.push_back(nrm);
      }
      for (const auto& u : dirs) {
        for (double beta : {0.1, 0.25, 0.5, 0.8}) {
          Point apex(n);
          for (int a = 0; a < n; ++a) apex[a] = mid[a] + beta * dxy * u[a];
          if (checker.passes(x, y, &apex)) {
            out.resolved = true;
            break;
          }
        }
        if (out.resolved) break;
      }
    }
    outcomes[k] = out;
  }

  EpsilonCertificate cert;
  cert.eps = eps;
  cert.samples = pairs.size();
  cert.seed = options.seed;
  double worst = 1.0 + 1e-9;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& out = outcomes[k];
    if (out.ratio > 1.0 + 1e-9) {
      ++cert.certified_violations;
      if (out.ratio > worst) {
        worst = out.ratio;
        cert.verdict = Verdict::refuted;
        cert.failed_condition = 3;
        cert.witness_x = pairs[k].x;
        cert.witness_y = pairs[k].y;
        cert.witness_ratio = out.ratio;
      }
    } else if (!out.resolved) {
      ++cert.unresolved;
    }
  }
  return cert;
}

}  // namespace nlsob
