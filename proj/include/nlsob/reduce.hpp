#pragma once

#include <cstddef>
#include <span>

namespace nlsob {

/// Pairwise (tree) summation over the canonical ordering of `terms`.
///
/// Split points depend only on the length, so the rounding pattern is fixed
/// no matter how many threads produced the terms.
double pairwise_sum(std::span<const double> terms);

/// Pairwise sum of a[i] * b[i].
double pairwise_dot(std::span<const double> a, std::span<const double> b);

double max_of(std::span<const double> terms);

}  // namespace nlsob
