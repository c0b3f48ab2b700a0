#pragma once

// Norm evaluators for the function-space catalog.
//
// The low-level evaluators take a full-grid value array. Cells outside the
// domain are expected to carry zero, which is how `norm` realises X(Omega):
// the zero extension of f|_Omega is evaluated on the whole grid.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "nlsob/domain.hpp"
#include "nlsob/grid.hpp"
#include "nlsob/space_spec.hpp"

namespace nlsob {

double lebesgue_norm(const Grid& grid, std::span<const double> v, double p);
/// (sum |f|^r w dvol)^{1/r}. Throws on negative weight cells.
double weighted_lebesgue_norm(const Grid& grid, std::span<const double> v, double r,
                              std::span<const double> weight);

/// f* as a right-continuous step function: values[k] on [breaks[k-1], breaks[k])
/// with breaks[-1] = 0. Equal values are merged and zero values omitted, so
/// values is strictly decreasing and positive.
struct Rearrangement {
  std::vector<double> breaks;
  std::vector<double> values;

  double operator()(double t) const;
};
Rearrangement decreasing_rearrangement(const Grid& grid, std::span<const double> v);

double lorentz_norm(const Grid& grid, std::span<const double> v, double r, double tau);

/// Smallest lambda with sum Phi(|f|/lambda) dvol <= 1, by bisection in log
/// lambda to a relative width below 1e-13.
double luxemburg_norm(const Grid& grid, std::span<const double> v, const OrliczFunction& phi);

/// L^r norm over the box of x -> ||f 1_B(x,t)||_Phi / ||1_B(x,t)||_Phi with
/// lattice balls. Throws when t is below half a cell.
double orlicz_slice_norm(const Grid& grid, std::span<const double> v, const OrliczFunction& phi, double r,
                         double t);

struct MorreyResult {
  double value = 0.0;
  double radius = 0.0;
  std::size_t center = 0;
};
/// Max over lattice balls centred at every cell, with |B| the full lattice
/// count times the cell volume.
MorreyResult morrey_norm(const Grid& grid, std::span<const double> v, double r, double alpha,
                         std::span<const double> radii);

struct LevelRange {
  int min = 0;
  int max = 0;
};
/// One level below the grid scale up to one above the box diameter.
LevelRange default_levels(const Grid& grid);
/// Besov-Bourgain-Morrey norm over the origin-anchored dyadic system, with
/// f piecewise constant on cells. Infinite r or tau take a max.
double bbm_morrey_norm(const Grid& grid, std::span<const double> v, double q, double p, double r, double tau,
                       LevelRange levels);

/// Annulus index of a cell centre: k with 2^{k-1} <= |x - xi| < 2^k. A centre
/// sitting on xi is placed at half the cell radius.
int herz_annulus(const Grid& grid, std::span<const double> x, std::span<const double> xi);
double herz_local_norm(const Grid& grid, std::span<const double> v, double p, double q, const HerzWeight& omega,
                       std::span<const double> xi);

struct HerzGlobalResult {
  double value = 0.0;
  std::vector<double> xi;
};
/// Every `stride`-th cell centre per axis, plus the origin when it lies in the box.
std::vector<std::vector<double>> herz_xi_grid(const Grid& grid, int stride);
HerzGlobalResult herz_global_norm(const Grid& grid, std::span<const double> v, double p, double q,
                                  const HerzWeight& omega, const std::vector<std::vector<double>>& xi_grid);

/// Iterated norm, innermost axis 0 with r[0].
double mixed_norm(const Grid& grid, std::span<const double> v, std::span<const double> r);

std::vector<double> sample_exponent(const space::VariableLebesgue& spec, const Grid& grid);
double variable_lebesgue_norm(const Grid& grid, std::span<const double> v, std::span<const double> exponent);

struct MoIndices {
  double m0 = 0.0, M0 = 0.0, m_inf = 0.0, M_inf = 0.0;
};
MoIndices mo_indices(const HerzWeight& omega);
/// -n/p < m0 <= M0 < n(1/s - 1/p), and the same bounds for m_inf <= M_inf.
bool local_herz_hypothesis(const HerzWeight& omega, int n, double p, double s);

/// Values of `spec` already zero outside the domain.
double norm_values(const Grid& grid, std::span<const double> v, const SpaceSpec& spec);
double norm(const SampledField& f, const SpaceSpec& spec, const DomainMask& omega);
/// Norm of the zero extension of values given on the mask cells.
double restriction_norm(std::span<const double> on_domain, const SpaceSpec& spec, const DomainMask& omega);

struct AssociateEstimate {
  double lower_bound = 0.0;
  std::size_t best_witness = 0;
  std::size_t witnesses = 0;
  std::optional<double> exact;
};
/// max over witnesses g with norm(g, X) = 1 of sum |f g| dvol. Witnesses are
/// powers of |f| plus `random_witnesses` random nonnegative fields.
AssociateEstimate associate_norm_empirical(const SampledField& f, const SpaceSpec& spec, const DomainMask& omega,
                                           std::size_t random_witnesses, std::uint64_t seed);

}  // namespace nlsob
