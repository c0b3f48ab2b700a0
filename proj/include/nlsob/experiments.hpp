#pragma once

#include "nlsob/config.hpp"
#include "nlsob/grid.hpp"
#include "nlsob/report.hpp"

namespace nlsob {

/// Same box with twice the cells per axis.
Grid refined(const Grid& grid);
/// Configured grids, each followed by its refinement when `refine` is set.
std::vector<Grid> config_grids(const ExperimentConfig& cfg);

/// s-sweep, extrapolation to s -> 1 and comparison with K(p,n)^{1/p} times
/// the Sobolev norm. Check: |ratio - 1| <= params.tolerance (0.03).
RatioTable run_bbm_experiment(const ExperimentConfig& cfg);

/// lambda-sweep sup against the Sobolev norm. Checks: per (space, gamma, p, n)
/// bracket width <= params.bracket (10); with refinement, ratio drift between
/// N and 2N <= params.refine_tol (0.1). With params.expect_ratio every row's
/// ratio must match it to params.ratio_tol (0.01) relative.
RatioTable run_bsvy_experiment(const ExperimentConfig& cfg);

/// Morrey norm against the sup over cubes of |Q|^{1/alpha-1/r} times the
/// weighted norm with weight (M 1_Q)^theta. Checks: ratio within
/// [1/params.bracket, params.bracket] and A_1 constants of the weights on
/// params.cubes random cubes within a factor params.a1_factor (2).
RatioTable run_morrey_duality_check(const ExperimentConfig& cfg);

/// params.instances random instances (100) on params.cells-cell grids (16).
RatioTable run_weak_holder_suite(const ExperimentConfig& cfg);

RatioTable run_norms_experiment(const ExperimentConfig& cfg);

/// A_p constants of the configured weights; 1D power weights at p = 1 are
/// compared with 1/(1+a) to params.tolerance (0.02), and the constants must
/// not increase with p.
RatioTable run_ap_constants(const ExperimentConfig& cfg);

/// Dispatches on cfg.kind.
RatioTable run_experiment(const ExperimentConfig& cfg);

}  // namespace nlsob
