#pragma once

#include <cstddef>
#include <vector>

#include "nlsob/domain.hpp"
#include "nlsob/maximal.hpp"
#include "nlsob/space_spec.hpp"
#include "nlsob/weight.hpp"

namespace nlsob {

struct OpnormEstimate {
  double value = 0.0;
  std::size_t best_probe = 0;
};

/// max over probes g of norm(M g, X) / norm(g, X); a lower bound on the
/// operator norm of M on X restricted to the grid.
OpnormEstimate estimate_maximal_opnorm(const SpaceSpec& space, const std::vector<SampledField>& probes,
                                       const MaximalOperator& maximal);

struct RubioResult {
  Weight weight;             // R_K g
  double opnorm_bound = 0.0;
  int depth = 0;             // K
  double running_norm = 0.0; // sup of 2 A R_K g
  double eps = 0.0;          // 2^{-(K+1)} * running_norm
  double tail_max = 0.0;     // sup of M^{K+1} g / (2A)^K, the exact dropped slack
  double space_ratio = 0.0;  // norm(R_K g, X) / norm(g, X)
  bool space_bound_holds = false;  // space_ratio <= 2
};

/// R_K g = sum_{k=0}^{K} M^k g / (2A)^k with M^0 g = |g|.
RubioResult rubio_de_francia(const SampledField& g, const SpaceSpec& space, double opnorm_bound, int depth,
                             const MaximalOperator& maximal);

/// Largest violation of M(R) <= 2 A R + eps over the cells, as
/// max(M R - 2 A R - eps); nonpositive when the bound holds.
double rubio_domination_margin(const RubioResult& r, const MaximalOperator& maximal);

struct DualityBound {
  double witness_pairing = 0.0;  // (int |f|^p |g|)^{1/p}
  double rubio_pairing = 0.0;    // (int |f|^p R_K g)^{1/p}
  double norm = 0.0;             // norm(f, X, Omega)
  bool upper_holds = false;      // rubio_pairing <= 2^{1/p} norm (1 + 1e-12)
};

/// One witness of the extrapolation sandwich. `g` must have unit norm in the
/// associate of convexify(X, 1/p); throws otherwise.
DualityBound weighted_norm_duality_bound(const SampledField& f, const SpaceSpec& space, double p,
                                         const DomainMask& omega, const SampledField& g, double opnorm_bound,
                                         int depth, const MaximalOperator& maximal);

}  // namespace nlsob
