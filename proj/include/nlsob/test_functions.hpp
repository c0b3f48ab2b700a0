#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nlsob/grid.hpp"

namespace nlsob {

enum class FunctionKind { gaussian, tent, coordinate, bump, polygauss, constant, indicator };

/// Closed-form test functions. Canonical text:
///   gaussian:sigma=1,center=0      exp(-|x-c|^2 / sigma^2)
///   tent:width=2,center=0          max(0, 1 - 2|x-c| / width)
///   coordinate:axis=0              x_axis
///   bump:radius=1,center=0         exp(1 - 1/(1 - |x-c|^2/radius^2)) inside the ball
///   polygauss:degree=1,sigma=1     (x_0 - c_0)^degree * exp(-|x-c|^2 / sigma^2)
///   constant:value=1               value everywhere
///   indicator:lo=0,hi=1            1 on the box [lo, hi), 0 elsewhere
///
/// The indicator's gradient is the pointwise one (zero off the box boundary),
/// so it is meant for value-only checks such as norms and Morrey duality.
struct TestFunctionSpec {
  FunctionKind kind = FunctionKind::gaussian;
  double sigma = 1.0;
  double width = 2.0;
  double radius = 1.0;
  int axis = 0;
  int degree = 1;
  double level = 1.0;
  std::vector<double> box_lo{0.0}, box_hi{1.0};  // one entry broadcasts
  std::vector<double> center;  // empty or one entry broadcasts

  static TestFunctionSpec parse(std::string_view text);
  std::string to_string() const;

  double value(std::span<const double> x) const;
  void gradient(std::span<const double> x, std::span<double> out) const;
  /// Half-width of a centred box outside which the function's L^1 tail is
  /// below `tolerance` relative; nullopt for functions that do not decay
  /// and for indicators, whose support is the box itself.
  std::optional<double> decay_half_width(int dim, double tolerance = 1e-8) const;
  static double box_coord(const std::vector<double>& v, int axis);

 private:
  double c(int axis) const;
  void validate() const;
};

/// Evaluates at cell centres and fills the analytic gradient.
SampledField sample(const TestFunctionSpec& spec, const Grid& grid);

}  // namespace nlsob
