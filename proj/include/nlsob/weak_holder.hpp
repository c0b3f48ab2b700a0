#pragma once

#include <span>
#include <vector>

#include "nlsob/domain.hpp"
#include "nlsob/grid.hpp"

namespace nlsob {

/// A function of (x, y) sampled on cell pairs, x-major: values[x * size + y].
struct PairField {
  Grid grid;
  std::vector<double> values;
};

struct WeakHolderResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double weak_norm = 0.0;  // sup_lambda lambda mu(|F| > lambda)^{1/p}
  double layer_integral = 0.0;  // int_0^inf mu(|G| > xi)^{1/p'} dxi
  double ratio = 0.0;  // lhs / rhs, 0 when both vanish
  bool pass = false;
};

/// int |F G| dmu <= p' * weak_norm(F) * layer_integral(G) with
/// dmu = |x-y|^{gamma-n} w(x) dx dy off the diagonal in Omega^2. Both the
/// supremum and the integral are evaluated exactly on the step functions.
WeakHolderResult weak_holder_check(const PairField& F, const PairField& G, double gamma,
                                   std::span<const double> weight, double p, const DomainMask& omega);

}  // namespace nlsob
