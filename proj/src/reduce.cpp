#include "nlsob/reduce.hpp"

#include <algorithm>
#include <vector>

namespace nlsob {

namespace {
constexpr std::size_t kLeaf = 32;
}

double pairwise_sum(std::span<const double> terms) {
  if (terms.size() <= kLeaf) {
    double acc = 0.0;
    for (double t : terms) acc += t;
    return acc;
  }
  const std::size_t half = terms.size() / 2;
  return pairwise_sum(terms.first(half)) + pairwise_sum(terms.subspan(half));
}

double pairwise_dot(std::span<const double> a, std::span<const double> b) {
  std::vector<double> prod(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) prod[i] = a[i] * b[i];
  return pairwise_sum(prod);
}

double max_of(std::span<const double> terms) {
  double m = 0.0;
  for (double t : terms) m = std::max(m, t);
  return m;
}

}  // namespace nlsob
