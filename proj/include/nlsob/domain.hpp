#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nlsob/grid.hpp"

namespace nlsob {

enum class Shape { full, ball, halfspace, lshape, annulus, slit };

/// Domains inside the ambient grid box. Canonical text:
///   full
///   ball:center=0,radius=1
///   halfspace:axis=0,offset=0            {x_axis > offset}
///   lshape:corner=0                      box minus {x_0 >= c_0, x_1 >= c_1}
///   annulus:center=0,r1=0.5,r2=1
///   slit:axis=0,offset=0,from=0          box minus {x_axis = offset, x_{axis+1} >= from}
struct DomainSpec {
  Shape shape = Shape::full;
  std::vector<double> center;
  double radius = 1.0;
  double r1 = 0.5, r2 = 1.0;
  int axis = 0;
  double offset = 0.0;
  double from = 0.0;
  std::vector<double> corner;

  static DomainSpec parse(std::string_view text);
  std::string to_string() const;

  bool is_convex() const;
  /// Open-set membership relative to the box [lo, hi].
  bool contains(std::span<const double> x, std::span<const double> lo,
                std::span<const double> hi) const;
  /// Closed-form dist(x, boundary) for x inside the domain.
  double boundary_distance(std::span<const double> x, std::span<const double> lo,
                           std::span<const double> hi) const;
  /// A lower bound on the length of every curve inside the domain joining
  /// x and y. Exact for the convex shapes, the slit and the L-shape.
  double geodesic_lower_bound(std::span<const double> x, std::span<const double> y,
                              std::span<const double> lo, std::span<const double> hi) const;

 private:
  double coord(const std::vector<double>& v, int a) const;
};

/// Cell membership of a domain: a cell belongs iff its centre does.
struct DomainMask {
  Grid grid;
  std::vector<std::uint8_t> inside;

  std::size_t count() const;
  double measure() const { return static_cast<double>(count()) * grid.cell_volume(); }
  bool is_full() const { return count() == grid.size(); }
  bool operator[](std::size_t i) const { return inside[i] != 0; }
};

/// Throws SpecError if no cell centre lies in the domain.
DomainMask mask(const DomainSpec& domain, const Grid& grid);
DomainMask full_mask(const Grid& grid);

/// f on the grid, zeroed outside the mask.
std::vector<double> restrict_values(const SampledField& f, const DomainMask& omega);
/// Values given on the mask cells (canonical order) extended by zero.
SampledField zero_extend(std::span<const double> on_domain, const DomainMask& omega);

enum class Verdict { refuted, not_refuted };

/// Outcome of a Monte Carlo search for a pair violating the (eps, inf)
/// conditions. Only certified violations refute.
struct EpsilonCertificate {
  double eps = 1.0;
  Verdict verdict = Verdict::not_refuted;
  std::vector<double> witness_x, witness_y;
  int failed_condition = 0;  // 3 (length) or 4 (clearance)
  double witness_ratio = 0.0;  // curve-length lower bound / (|x-y| / eps)
  std::size_t samples = 0;
  std::size_t certified_violations = 0;
  /// Pairs for which no candidate curve passed but no violation was certified.
  std::size_t unresolved = 0;
  std::uint64_t seed = 0;
};

struct FalsifierOptions {
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  /// Smallest pair separation sampled; defaults to diam/1024.
  double min_scale = 0.0;
  int curve_points = 64;
};

EpsilonCertificate epsilon_falsifier(const DomainSpec& domain, std::span<const double> lo,
                                     std::span<const double> hi, double eps,
                                     const FalsifierOptions& options = {});

}  // namespace nlsob
