#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "nlsob/domain.hpp"
#include "nlsob/grid.hpp"
#include "nlsob/kernels.hpp"
#include "nlsob/space_spec.hpp"

namespace nlsob {

struct BsvyParams {
  double gamma = 1.0;
  double p = 1.0;

  /// Throws on gamma = 0 or p outside [1, inf).
  void validate() const;
  /// p = 1 with gamma in [-1, 0): covered by the general theorem only.
  bool theorem_conditional() const { return p == 1.0 && gamma >= -1.0 && gamma < 0.0; }
};

/// 40 log-spaced points over [1e-3, 1e4] * scale.
std::vector<double> default_lambda_grid(double scale);

/// Level-set kernel integral at one lambda, as a field (zero outside Omega).
SampledField bsvy_inner(const SampledField& f, double lambda, const BsvyParams& params, const DomainMask& omega,
                        const KernelPolicy& policy);
/// Lambda-major rows for an increasing lambda list.
std::vector<double> bsvy_inner_profile(const SampledField& f, std::span<const double> lambdas,
                                       const BsvyParams& params, const DomainMask& omega,
                                       const KernelPolicy& policy);

/// lambda * norm((inner)^{1/p}, X, Omega).
double bsvy_functional(const SampledField& f, double lambda, const BsvyParams& params, const SpaceSpec& space,
                       const DomainMask& omega, const KernelPolicy& policy);

/// A lambda sweep and its supremum.
struct SupReport {
  std::vector<double> lambdas;
  std::vector<double> values;
  double sup = 0.0;
  double argmax = 0.0;
  bool boundary = false;  // argmax at an end of the final grid
  bool extended = false;  // the grid was extended once
  std::vector<std::string> flags;
};

/// Sweeps `lambdas` (default grid scaled by sup |grad f| on Omega when empty),
/// extends the grid by two decades once if the argmax sits at an end, then
/// refines around the argmax with geometric midpoints. The level-set rows are
/// computed once per lambda and shared by all spaces.
std::vector<SupReport> bsvy_sup(const SampledField& f, const BsvyParams& params,
                                const std::vector<SpaceSpec>& spaces, const DomainMask& omega,
                                const KernelPolicy& policy, std::vector<double> lambdas = {});

/// sup over lambda of lambda * nu_gamma(E_lambda cap Omega^2)^{1/p}.
SupReport weak_product_quasinorm(const SampledField& f, const BsvyParams& params, const DomainMask& omega,
                                 const KernelPolicy& policy, std::vector<double> lambdas = {});

/// The generic sweep: `evaluate` maps an increasing lambda list to one value
/// list per series (series-major).
using ProfileEvaluator = std::function<std::vector<std::vector<double>>(std::span<const double>)>;
std::vector<SupReport> sweep_sup(const ProfileEvaluator& evaluate, std::size_t series, std::vector<double> lambdas);

/// sum over x != y in Omega with E(x, y) of |x-y|^{gamma-n} w(x) dvol^2.
double weighted_mu_measure(const Grid& grid, const std::function<bool(std::size_t, std::size_t)>& pairs,
                           double gamma, std::span<const double> weight, const DomainMask& omega);

}  // namespace nlsob
