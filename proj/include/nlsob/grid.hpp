#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nlsob {

/// Cell-centred uniform tensor grid over a box. Flat indices run with axis 0
/// fastest.
class Grid {
 public:
  Grid() = default;
  /// Throws SpecError on unordered or non-finite bounds and on fewer than two
  /// points per axis.
  Grid(std::vector<double> lo, std::vector<double> hi, std::vector<int> points);

  int dim() const { return static_cast<int>(lo_.size()); }
  double lo(int axis) const { return lo_[axis]; }
  double hi(int axis) const { return hi_[axis]; }
  int points(int axis) const { return points_[axis]; }
  double h(int axis) const { return h_[axis]; }
  const std::vector<double>& lo() const { return lo_; }
  const std::vector<double>& hi() const { return hi_; }
  const std::vector<int>& points() const { return points_; }

  std::size_t size() const { return size_; }
  std::size_t stride(int axis) const { return strides_[axis]; }
  double cell_volume() const { return cell_volume_; }
  double h_min() const;
  double box_volume() const;
  double diameter() const;
  /// Radius of the ball whose volume equals one cell.
  double cell_radius() const;

  int index(std::size_t flat, int axis) const {
    return static_cast<int>((flat / strides_[axis]) % static_cast<std::size_t>(points_[axis]));
  }
  double axis_center(int axis, int i) const { return lo_[axis] + (i + 0.5) * h_[axis]; }
  double center(std::size_t flat, int axis) const { return axis_center(axis, index(flat, axis)); }
  std::vector<double> center(std::size_t flat) const;
  void center(std::size_t flat, std::span<double> out) const;
  /// Flat index of the cell containing `x` (clamped to the box).
  std::size_t locate(std::span<const double> x) const;

  bool operator==(const Grid& other) const;
  /// `n=2,lo=[..],hi=[..],N=[..]`
  std::string describe() const;

 private:
  std::vector<double> lo_, hi_, h_;
  std::vector<int> points_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 0;
  double cell_volume_ = 0.0;
};

Grid make_grid(int dim, std::span<const double> lo, std::span<const double> hi,
               std::span<const int> points);
/// [lo, hi]^dim with `points` cells per axis.
Grid make_cube_grid(int dim, double lo, double hi, int points);
/// Parses `n=2,L=5,N=128` (box [-L,L]^n) or `n=1,lo=0,hi=1,N=64`.
Grid parse_grid(std::string_view text);

/// Volume of the unit ball in R^n.
double unit_ball_volume(int n);
/// Surface area of the unit sphere S^{n-1} (2 for n = 1).
double unit_sphere_area(int n);

/// Function values on a grid with an optional closed-form gradient
/// (cell-major, `dim` components per cell).
struct SampledField {
  Grid grid;
  std::vector<double> values;
  std::optional<std::vector<double>> gradient;

  std::size_t size() const { return values.size(); }
};

/// Validates sizes and finiteness.
SampledField make_field(Grid grid, std::vector<double> values,
                        std::optional<std::vector<double>> gradient = std::nullopt);

void require_same_grid(const Grid& a, const Grid& b, const char* what);

}  // namespace nlsob
