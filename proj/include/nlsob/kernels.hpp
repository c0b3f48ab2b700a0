#pragma once

// Pair-sum kernels behind the Gagliardo and level-set functionals.
//
// Distances are lattice distances |(i - j) * h|, so the kernel depends only
// on the index offset and is tabulated once per call. Each row is summed
// serially in canonical y order; rows are independent and run in parallel.

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nlsob/domain.hpp"
#include "nlsob/grid.hpp"

namespace nlsob {

enum class Diagonal { exclude, equivalent_ball };

/// Quadrature policy for |x - y|^{gamma - n}. Text form
/// `policy:diagonal=ball,subsample=4,radius=1` (diagonal: exclude | ball).
struct KernelPolicy {
  Diagonal diagonal = Diagonal::equivalent_ball;
  /// Sub-points per axis for near-diagonal cells.
  int subsample = 1;
  /// Chebyshev index radius of the subsampled neighbourhood.
  int near_radius = 1;

  /// Ball correction with no subsampling for gamma > 0; exclusion with
  /// subsample 4 for gamma < 0.
  static KernelPolicy defaults(double gamma);
  static KernelPolicy parse(std::string_view text);
  std::string to_string() const;
};

/// Surface integral of |theta_1|^p over the unit sphere S^{n-1}.
double sphere_moment(double p, int n);

/// row(x) = sum_{y in Omega, y != x} |f(x)-f(y)|^p |x-y|^{-n-sp} dvol for x in
/// Omega (zero elsewhere). With the ball correction the diagonal cell adds
/// |grad f(x)|^p * sphere_moment(p,n) * rho^{p(1-s)} / (p(1-s)), rho the
/// volume-matched cell radius.
std::vector<double> gagliardo_rows(const Grid& grid, std::span<const double> f, const DomainMask& omega, double s,
                                   double p, Diagonal diagonal, std::span<const double> grad_magnitude);
std::vector<double> gagliardo_rows_reference(const Grid& grid, std::span<const double> f, const DomainMask& omega,
                                             double s, double p, Diagonal diagonal,
                                             std::span<const double> grad_magnitude);

/// Kernel mass of the level set of the linearization z -> grad . z inside
/// B(0, r): the integral over |z| < r with |grad . z| > lambda |z|^{1+gamma/p}
/// of |z|^{gamma-n}. Per direction theta the radial integral is
/// min(r^gamma, (|grad|/lambda)^p |theta_1|^p) / gamma for gamma > 0 and
/// max(0, (|grad|/lambda)^p |theta_1|^p - r^gamma) / |gamma| for gamma < 0.
double linearized_diagonal(double grad, double lambda, double r, double gamma, double p, int n);

/// Level-set rows for every lambda at once, lambda-major:
/// out[k * size + x] = sum over y in Omega, y != x, with
/// |f(x)-f(y)| > lambda_k |x-y|^{1+gamma/p} of |x-y|^{gamma-n} dvol.
/// Near-diagonal cells are split into subsample^n sub-cells whose values
/// follow the linear reconstruction f(y) + grad f(y) . delta. With the ball
/// correction the diagonal adds linearized_diagonal(|grad f(x)|, lambda, r,
/// gamma, p, n), r the volume-matched cell radius.
/// `lambdas` must be strictly increasing; `gradient` is cell-major.
std::vector<double> bsvy_rows(const Grid& grid, std::span<const double> f, std::span<const double> gradient,
                              const DomainMask& omega, double gamma, double p, const KernelPolicy& policy,
                              std::span<const double> lambdas);
std::vector<double> bsvy_rows_reference(const Grid& grid, std::span<const double> f,
                                        std::span<const double> gradient, const DomainMask& omega, double gamma,
                                        double p, const KernelPolicy& policy, std::span<const double> lambdas);

}  // namespace nlsob
