#pragma once

#include <span>
#include <utility>
#include <vector>

#include "nlsob/domain.hpp"
#include "nlsob/grid.hpp"
#include "nlsob/kernels.hpp"
#include "nlsob/space_spec.hpp"

namespace nlsob {

/// K(p,n) = 2 pi^{(n-1)/2} Gamma((p+1)/2) / (p Gamma((p+n)/2)).
double bbm_constant(double p, int n);

/// Gagliardo double sum as a cell field (the x-integrand, before the 1/p root).
std::vector<double> gagliardo_field(const SampledField& f, double s, double p, const DomainMask& omega,
                                    Diagonal diagonal = Diagonal::equivalent_ball);
double gagliardo_seminorm(const SampledField& f, double s, double p, const DomainMask& omega,
                          Diagonal diagonal = Diagonal::equivalent_ball);

/// (1-s)^{1/p} norm(x -> gagliardo_field(x)^{1/p}, X, Omega).
double bbm_scaled_value(const SampledField& f, double s, double p, const SpaceSpec& space, const DomainMask& omega,
                        Diagonal diagonal = Diagonal::equivalent_ball);

std::vector<double> default_s_grid();

struct Extrapolation {
  double limit = 0.0;
  double slope = 0.0;
  double residual = 0.0;  // root-mean-square fit residual
  std::vector<double> s_used;
};
/// Least-squares fit value = a + b (1-s) on the three largest s; returns a.
Extrapolation bbm_limit_extrapolate(std::span<const std::pair<double, double>> samples);

/// norm(|grad f|, X, Omega), analytic gradient preferred.
double sobolev_norm(const SampledField& f, const SpaceSpec& space, const DomainMask& omega);

}  // namespace nlsob
