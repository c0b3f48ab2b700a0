#pragma once

// Brute-force reference computations. Each works from raw box bounds, cell
// counts and value arrays with plain nested loops and recomputes geometry
// itself, so a shared bug in the library cannot hide.

#include <cstdint>
#include <functional>
#include <vector>

namespace nlsob::oracle {

/// Uniform cell-centred box, axis 0 fastest.
struct Box {
  std::vector<double> lo, hi;
  std::vector<int> n;

  int dim() const { return static_cast<int>(n.size()); }
  std::size_t cells() const;
  double h(int a) const { return (hi[a] - lo[a]) / n[a]; }
  double volume() const;
  std::vector<int> index(std::size_t c) const;
  std::vector<double> center(std::size_t c) const;
};

/// Full Gagliardo double sum (power p, before the root). With `ball` the
/// diagonal cell adds |grad f|^p * A * rho^{p(1-s)} / (p(1-s)), A the
/// integral of |theta_1|^p over the unit sphere computed by quadrature, rho
/// the radius of the ball of cell volume.
double gagliardo_sum(const Box& box, const std::vector<double>& f, const std::vector<std::uint8_t>& inside, double s,
                     double p, bool ball, const std::vector<double>& grad_mag);

/// Level-set row field at one lambda, including near-diagonal subsampling
/// (q sub-cells per axis, Chebyshev radius R) with the linear reconstruction
/// and, with `ball` set, the diagonal term: the kernel mass of
/// the level set of the frozen linearization inside the volume-matched ball.
std::vector<double> bsvy_inner(const Box& box, const std::vector<double>& f, const std::vector<double>& gradient,
                               const std::vector<std::uint8_t>& inside, double gamma, double p, double lambda,
                               bool ball, int q, int R);

/// Dyadic triple sum with f constant on cells: levels nu_min..nu_max, every
/// cube 2^nu (m + (0,1]^n) meeting the box.
double bbm_morrey(const Box& box, const std::vector<double>& f, double q, double p, double r, double tau,
                  int nu_min, int nu_max);

/// Annulus sum around xi; a centre on xi counts at half the volume-matched
/// cell radius.
double herz_local(const Box& box, const std::vector<double>& f, double p, double q, double a,
                  const std::vector<double>& xi);

double lebesgue(const Box& box, const std::vector<double>& f, double p);

/// Lorentz norm from a sorted copy and the closed-form integral of
/// t^{tau/r - 1} on each step.
double lorentz(const Box& box, const std::vector<double>& f, double r, double tau);

/// Composite Gauss-Legendre quadrature of g on [a, b].
double integrate(const std::function<double(double)>& g, double a, double b, int panels = 2000);

/// Root of a decreasing function on [lo, hi] by bisection.
double bisect_root(const std::function<double(double)>& g, double lo, double hi, double tol = 1e-14);

/// sup over r of |B(x, r) cap E| / |B(x, r)| for E = [a, b] in 1D, by a
/// dense sweep over r.
double interval_maximal_1d(double x, double a, double b);

}  // namespace nlsob::oracle
