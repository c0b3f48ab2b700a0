#include "nlsob/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nlsob/spec_text.hpp"

namespace nlsob {

Grid::Grid(std::vector<double> lo, std::vector<double> hi, std::vector<int> points)
    : lo_(std::move(lo)), hi_(std::move(hi)), points_(std::move(points)) {
  if (lo_.empty() || lo_.size() != hi_.size() || lo_.size() != points_.size()) {
    throw SpecError("grid: bounds and point counts must have matching dimension >= 1");
  }
  size_ = 1;
  cell_volume_ = 1.0;
  for (std::size_t a = 0; a < lo_.size(); ++a) {
    if (!std::isfinite(lo_[a]) || !std::isfinite(hi_[a])) throw SpecError("grid: non-finite bounds");
    if (!(hi_[a] > lo_[a])) throw SpecError("grid: hi must exceed lo on every axis");
    if (points_[a] < 2) throw SpecError("grid: at least two points per axis");
    h_.push_back((hi_[a] - lo_[a]) / points_[a]);
    strides_.push_back(size_);
    size_ *= static_cast<std::size_t>(points_[a]);
    cell_volume_ *= h_.back();
  }
}

double Grid::h_min() const { return *std::min_element(h_.begin(), h_.end()); }

double Grid::box_volume() const {
  double v = 1.0;
  for (int a = 0; a < dim(); ++a) v *= hi_[a] - lo_[a];
  return v;
}

double Grid::diameter() const {
  double d2 = 0.0;
  for (int a = 0; a < dim(); ++a) d2 += (hi_[a] - lo_[a]) * (hi_[a] - lo_[a]);
  return std::sqrt(d2);
}

double Grid::cell_radius() const {
  return std::pow(cell_volume_ / unit_ball_volume(dim()), 1.0 / dim());
}

std::vector<double> Grid::center(std::size_t flat) const {
  std::vector<double> x(dim());
  center(flat, x);
  return x;
}

void Grid::center(std::size_t flat, std::span<double> out) const {
  for (int a = 0; a < dim(); ++a) out[a] = center(flat, a);
}

std::size_t Grid::locate(std::span<const double> x) const {
  std::size_t flat = 0;
  for (int a = 0; a < dim(); ++a) {
    int i = static_cast<int>(std::floor((x[a] - lo_[a]) / h_[a]));
    i = std::clamp(i, 0, points_[a] - 1);
    flat += static_cast<std::size_t>(i) * strides_[a];
  }
  return flat;
}

bool Grid::operator==(const Grid& other) const {
  return lo_ == other.lo_ && hi_ == other.hi_ && points_ == other.points_;
}

std::string Grid::describe() const {
  std::vector<double> n(points_.begin(), points_.end());
  return "n=" + std::to_string(dim()) + ",lo=" + format_vector(lo_) + ",hi=" + format_vector(hi_) +
         ",N=" + format_vector(n);
}

Grid make_grid(int dim, std::span<const double> lo, std::span<const double> hi,
               std::span<const int> points) {
  if (dim < 1 || lo.size() != static_cast<std::size_t>(dim)) throw SpecError("grid: dimension mismatch");
  return Grid({lo.begin(), lo.end()}, {hi.begin(), hi.end()}, {points.begin(), points.end()});
}

Grid make_cube_grid(int dim, double lo, double hi, int points) {
  if (dim < 1) throw SpecError("grid: dimension must be >= 1");
  return Grid(std::vector<double>(dim, lo), std::vector<double>(dim, hi), std::vector<int>(dim, points));
}

Grid parse_grid(std::string_view text) {
  const auto spec = SpecText::parse("grid:" + std::string(text));
  const int n = spec.integer("n");
  if (n < 1) throw SpecError("grid: n must be >= 1");
  auto broadcast = [n](std::vector<double> v, const char* key) {
    if (v.size() == 1) v.assign(n, v[0]);
    if (v.size() != static_cast<std::size_t>(n)) {
      throw SpecError(std::string("grid: '") + key + "' has the wrong length");
    }
    return v;
  };
  std::vector<double> lo, hi;
  if (spec.has("L")) {
    auto half = broadcast(spec.vector_or("L", {}), "L");
    for (double l : half) {
      lo.push_back(-l);
      hi.push_back(l);
    }
  } else {
    lo = broadcast(spec.vector_or("lo", {0.0}), "lo");
    hi = broadcast(spec.vector_or("hi", {1.0}), "hi");
  }
  std::vector<int> pts;
  for (double v : broadcast(spec.vector_or("N", {}), "N")) {
    if (v != std::floor(v) || v <= 0) throw SpecError("grid: N must be positive integers");
    pts.push_back(static_cast<int>(v));
  }
  spec.expect_consumed();
  return Grid(std::move(lo), std::move(hi), std::move(pts));
}

double unit_ball_volume(int n) {
  return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

double unit_sphere_area(int n) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

SampledField make_field(Grid grid, std::vector<double> values,
                        std::optional<std::vector<double>> gradient) {
  if (values.size() != grid.size()) throw SpecError("field: value count does not match grid");
  for (double v : values) {
    if (!std::isfinite(v)) throw SpecError("field: non-finite value");
  }
  if (gradient && gradient->size() != grid.size() * static_cast<std::size_t>(grid.dim())) {
    throw SpecError("field: gradient must have dim components per cell");
  }
  return SampledField{std::move(grid), std::move(values), std::move(gradient)};
}

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (!(a == b)) throw SpecError(std::string(what) + ": grid mismatch");
}

}  // namespace nlsob
