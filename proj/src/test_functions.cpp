#include "nlsob/test_functions.hpp"

#include <algorithm>
#include <cmath>

#include "nlsob/spec_text.hpp"

namespace nlsob {

TestFunctionSpec TestFunctionSpec::parse(std::string_view text) {
  const auto t = SpecText::parse(text);
  TestFunctionSpec spec;
  const auto& tag = t.tag();
  if (tag == "gaussian") {
    spec.kind = FunctionKind::gaussian;
    spec.sigma = t.number_or("sigma", 1.0);
    spec.center = t.vector_or("center", {});
  } else if (tag == "tent") {
    spec.kind = FunctionKind::tent;
    spec.width = t.number_or("width", 2.0);
    spec.center = t.vector_or("center", {});
  } else if (tag == "coordinate") {
    spec.kind = FunctionKind::coordinate;
    spec.axis = t.integer_or("axis", 0);
  } else if (tag == "bump") {
    spec.kind = FunctionKind::bump;
    spec.radius = t.number_or("radius", 1.0);
    spec.center = t.vector_or("center", {});
  } else if (tag == "polygauss") {
    spec.kind = FunctionKind::polygauss;
    spec.degree = t.integer_or("degree", 1);
    spec.sigma = t.number_or("sigma", 1.0);
    spec.center = t.vector_or("center", {});
  } else if (tag == "constant") {
    spec.kind = FunctionKind::constant;
    spec.level = t.number_or("value", 1.0);
  } else if (tag == "indicator") {
    spec.kind = FunctionKind::indicator;
    spec.box_lo = t.vector_or("lo", {0.0});
    spec.box_hi = t.vector_or("hi", {1.0});
  } else {
    throw SpecError("unknown test function '" + tag + "'");
  }
  t.expect_consumed();
  spec.validate();
  return spec;
}

void TestFunctionSpec::validate() const {
  if (!(sigma > 0) || !(width > 0) || !(radius > 0)) {
    throw SpecError("test function: sigma, width and radius must be positive");
  }
  if (axis < 0) throw SpecError("test function: axis must be >= 0");
  if (degree < 0) throw SpecError("test function: degree must be >= 0");
  if (!std::isfinite(level)) throw SpecError("constant: value must be finite");
  if (box_lo.empty() || box_hi.empty()) throw SpecError("indicator: lo and hi must be nonempty");
  const std::size_t m = std::max(box_lo.size(), box_hi.size());
  for (std::size_t a = 0; a < m; ++a) {
    if (!(box_lo[std::min(a, box_lo.size() - 1)] < box_hi[std::min(a, box_hi.size() - 1)]))
      throw SpecError("indicator: lo must be below hi on every axis");
  }
}

std::string TestFunctionSpec::to_string() const {
  const std::string ctr = center.empty() ? "0" : format_vector(center);
  switch (kind) {
    case FunctionKind::gaussian:
      return "gaussian:sigma=" + format_number(sigma) + ",center=" + ctr;
    case FunctionKind::tent:
      return "tent:width=" + format_number(width) + ",center=" + ctr;
    case FunctionKind::coordinate:
      return "coordinate:axis=" + std::to_string(axis);
    case FunctionKind::bump:
      return "bump:radius=" + format_number(radius) + ",center=" + ctr;
    case FunctionKind::polygauss:
      return "polygauss:degree=" + std::to_string(degree) + ",sigma=" + format_number(sigma) +
             ",center=" + ctr;
    case FunctionKind::constant:
      return "constant:value=" + format_number(level);
    case FunctionKind::indicator:
      return "indicator:lo=" + format_vector(box_lo) + ",hi=" + format_vector(box_hi);
  }
  return {};
}

double TestFunctionSpec::c(int a) const {
  if (center.empty()) return 0.0;
  if (center.size() == 1) return center[0];
  return center.at(a);
}

double TestFunctionSpec::box_coord(const std::vector<double>& v, int a) {
  return v.size() == 1 ? v[0] : v.at(a);
}

double TestFunctionSpec::value(std::span<const double> x) const {
  const int n = static_cast<int>(x.size());
  double r2 = 0.0;
  for (int a = 0; a < n; ++a) r2 += (x[a] - c(a)) * (x[a] - c(a));
  switch (kind) {
    case FunctionKind::gaussian:
      return std::exp(-r2 / (sigma * sigma));
    case FunctionKind::tent:
      return std::max(0.0, 1.0 - 2.0 * std::sqrt(r2) / width);
    case FunctionKind::coordinate:
      if (axis >= n) throw SpecError("coordinate: axis exceeds grid dimension");
      return x[axis];
    case FunctionKind::bump: {
      const double rho2 = r2 / (radius * radius);
      return rho2 < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - rho2)) : 0.0;
    }
    case FunctionKind::polygauss:
      return std::pow(x[0] - c(0), degree) * std::exp(-r2 / (sigma * sigma));
    case FunctionKind::constant:
      return level;
    case FunctionKind::indicator:
      for (int a = 0; a < n; ++a) {
        if (x[a] < box_coord(box_lo, a) || x[a] >= box_coord(box_hi, a)) return 0.0;
      }
      return 1.0;
  }
  return 0.0;
}

void TestFunctionSpec::gradient(std::span<const double> x, std::span<double> out) const {
  const int n = static_cast<int>(x.size());
  double r2 = 0.0;
  for (int a = 0; a < n; ++a) r2 += (x[a] - c(a)) * (x[a] - c(a));
  for (int a = 0; a < n; ++a) out[a] = 0.0;
  switch (kind) {
    case FunctionKind::gaussian: {
      const double g = std::exp(-r2 / (sigma * sigma));
      for (int a = 0; a < n; ++a) out[a] = -2.0 * (x[a] - c(a)) / (sigma * sigma) * g;
      break;
    }
    case FunctionKind::tent: {
      const double r = std::sqrt(r2);
      if (r > 0.0 && r < 0.5 * width) {
        for (int a = 0; a < n; ++a) out[a] = -2.0 / width * (x[a] - c(a)) / r;
      }
      break;
    }
    case FunctionKind::coordinate:
      if (axis >= n) throw SpecError("coordinate: axis exceeds grid dimension");
      out[axis] = 1.0;
      break;
    case FunctionKind::bump: {
      const double rho2 = r2 / (radius * radius);
      if (rho2 < 1.0) {
        const double f = std::exp(1.0 - 1.0 / (1.0 - rho2));
        const double k = -2.0 * f / (radius * radius * (1.0 - rho2) * (1.0 - rho2));
        for (int a = 0; a < n; ++a) out[a] = k * (x[a] - c(a));
      }
      break;
    }
    case FunctionKind::polygauss: {
      const double g = std::exp(-r2 / (sigma * sigma));
      const double u = x[0] - c(0);
      const double poly = std::pow(u, degree);
      for (int a = 0; a < n; ++a) out[a] = poly * g * (-2.0 * (x[a] - c(a)) / (sigma * sigma));
      if (degree > 0) out[0] += degree * std::pow(u, degree - 1) * g;
      break;
    }
    case FunctionKind::constant:
    case FunctionKind::indicator:
      break;
  }
}

std::optional<double> TestFunctionSpec::decay_half_width(int dim, double tolerance) const {
  double shift = 0.0;
  for (int a = 0; a < dim; ++a) shift = std::max(shift, std::abs(c(a)));
  const double log_tol = -std::log(tolerance / dim);
  switch (kind) {
    case FunctionKind::gaussian:
      return shift + sigma * std::sqrt(log_tol);
    case FunctionKind::polygauss:
      return shift + sigma * (std::sqrt(log_tol) + degree);
    case FunctionKind::tent:
      return shift + 0.5 * width;
    case FunctionKind::bump:
      return shift + radius;
    case FunctionKind::indicator:
    case FunctionKind::coordinate:
    case FunctionKind::constant:
      return std::nullopt;
  }
  return std::nullopt;
}

SampledField sample(const TestFunctionSpec& spec, const Grid& grid) {
  const int n = grid.dim();
  std::vector<double> values(grid.size());
  std::vector<double> grad(grid.size() * n);
  std::vector<double> x(n);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid.center(i, x);
    values[i] = spec.value(x);
    spec.gradient(x, std::span<double>(grad).subspan(i * n, n));
  }
  return make_field(grid, std::move(values), std::move(grad));
}

}  // namespace nlsob
