#include "nlsob/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nlsob/spec_text.hpp"

namespace nlsob {

namespace {

double box_distance(std::span<const double> x, std::span<const double> lo, std::span<const double> hi) {
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < x.size(); ++a) d = std::min({d, x[a] - lo[a], hi[a] - x[a]});
  return d;
}

double norm2(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t a = 0; a < x.size(); ++a) s += (x[a] - y[a]) * (x[a] - y[a]);
  return std::sqrt(s);
}

const char* shape_tag(Shape s) {
  switch (s) {
    case Shape::full: return "full";
    case Shape::ball: return "ball";
    case Shape::halfspace: return "halfspace";
    case Shape::lshape: return "lshape";
    case Shape::annulus: return "annulus";
    case Shape::slit: return "slit";
  }
  return "";
}

}  // namespace

DomainSpec DomainSpec::parse(std::string_view text) {
  const auto t = SpecText::parse(text);
  DomainSpec d;
  const auto& tag = t.tag();
  if (tag == "full") {
    d.shape = Shape::full;
  } else if (tag == "ball") {
    d.shape = Shape::ball;
    d.center = t.vector_or("center", {});
    d.radius = t.number_or("radius", 1.0);
    if (!(d.radius > 0)) throw SpecError("ball: radius must be positive");
  } else if (tag == "halfspace") {
    d.shape = Shape::halfspace;
    d.axis = t.integer_or("axis", 0);
    d.offset = t.number_or("offset", 0.0);
  } else if (tag == "lshape") {
    d.shape = Shape::lshape;
    d.corner = t.vector_or("corner", {});
  } else if (tag == "annulus") {
    d.shape = Shape::annulus;
    d.center = t.vector_or("center", {});
    d.r1 = t.number_or("r1", 0.5);
    d.r2 = t.number_or("r2", 1.0);
    if (!(d.r1 >= 0 && d.r2 > d.r1)) throw SpecError("annulus: need 0 <= r1 < r2");
  } else if (tag == "slit") {
    d.shape = Shape::slit;
    d.axis = t.integer_or("axis", 0);
    d.offset = t.number_or("offset", 0.0);
    d.from = t.number_or("from", 0.0);
  } else {
    throw SpecError("unknown domain '" + tag + "'");
  }
  if (d.axis < 0) throw SpecError("domain: axis must be >= 0");
  for (double v : d.center) {
    if (!std::isfinite(v)) throw SpecError("domain: non-finite parameter");
  }
  t.expect_consumed();
  return d;
}

std::string DomainSpec::to_string() const {
  const auto vec = [](const std::vector<double>& v) { return v.empty() ? std::string("0") : format_vector(v); };
  switch (shape) {
    case Shape::full: return "full";
    case Shape::ball: return "ball:center=" + vec(center) + ",radius=" + format_number(radius);
    case Shape::halfspace:
      return "halfspace:axis=" + std::to_string(axis) + ",offset=" + format_number(offset);
    case Shape::lshape: return "lshape:corner=" + vec(corner);
    case Shape::annulus:
      return "annulus:center=" + vec(center) + ",r1=" + format_number(r1) + ",r2=" + format_number(r2);
    case Shape::slit:
      return "slit:axis=" + std::to_string(axis) + ",offset=" + format_number(offset) +
             ",from=" + format_number(from);
  }
  return shape_tag(shape);
}

double DomainSpec::coord(const std::vector<double>& v, int a) const {
  if (v.empty()) return 0.0;
  if (v.size() == 1) return v[0];
  return v.at(a);
}

bool DomainSpec::is_convex() const {
  return shape == Shape::full || shape == Shape::ball || shape == Shape::halfspace;
}

bool DomainSpec::contains(std::span<const double> x, std::span<const double> lo,
                          std::span<const double> hi) const {
  const int n = static_cast<int>(x.size());
  if (box_distance(x, lo, hi) <= 0.0) return false;
  switch (shape) {
    case Shape::full:
      return true;
    case Shape::ball: {
      double r2 = 0.0;
      for (int a = 0; a < n; ++a) r2 += (x[a] - coord(center, a)) * (x[a] - coord(center, a));
      return r2 < radius * radius;
    }
    case Shape::halfspace:
      return x[axis % n] > offset;
    case Shape::lshape:
      if (n < 2) return x[0] < coord(corner, 0);
      return !(x[0] >= coord(corner, 0) && x[1] >= coord(corner, 1));
    case Shape::annulus: {
      double r2 = 0.0;
      for (int a = 0; a < n; ++a) r2 += (x[a] - coord(center, a)) * (x[a] - coord(center, a));
      return r2 > r1 * r1 && r2 < this->r2 * this->r2;
    }
    case Shape::slit:
      if (n < 2) return x[axis % n] != offset;
      return !(x[axis % n] == offset && x[(axis + 1) % n] >= from);
  }
  return false;
}

double DomainSpec::boundary_distance(std::span<const double> x, std::span<const double> lo,
                                     std::span<const double> hi) const {
  const int n = static_cast<int>(x.size());
  double d = box_distance(x, lo, hi);
  switch (shape) {
    case Shape::full:
      break;
    case Shape::ball: {
      double r2 = 0.0;
      for (int a = 0; a < n; ++a) r2 += (x[a] - coord(center, a)) * (x[a] - coord(center, a));
      d = std::min(d, radius - std::sqrt(r2));
      break;
    }
    case Shape::halfspace:
      d = std::min(d, x[axis % n] - offset);
      break;
    case Shape::lshape: {
      if (n < 2) {
        d = std::min(d, coord(corner, 0) - x[0]);
        break;
      }
      const double u = std::max(coord(corner, 0) - x[0], 0.0);
      const double v = std::max(coord(corner, 1) - x[1], 0.0);
      d = std::min(d, std::sqrt(u * u + v * v));
      break;
    }
    case Shape::annulus: {
      double r2 = 0.0;
      for (int a = 0; a < n; ++a) r2 += (x[a] - coord(center, a)) * (x[a] - coord(center, a));
      const double r = std::sqrt(r2);
      d = std::min({d, r - r1, this->r2 - r});
      break;
    }
    case Shape::slit: {
      const double u = x[axis % n] - offset;
      if (n < 2) {
        d = std::min(d, std::abs(u));
        break;
      }
      const double v = std::max(from - x[(axis + 1) % n], 0.0);
      d = std::min(d, std::sqrt(u * u + v * v));
      break;
    }
  }
  return d;
}

double DomainSpec::geodesic_lower_bound(std::span<const double> x, std::span<const double> y,
                                        std::span<const double> lo, std::span<const double> hi) const {
  (void)lo;
  (void)hi;
  const int n = static_cast<int>(x.size());
  const double straight = norm2(x, y);
  if (n < 2) return straight;

  // Both remaining cases block the straight segment with a convex obstacle
  // that reaches the box boundary, so every admissible curve passes around a
  // single edge; projecting onto the (a, b) plane gives the bound.
  auto around = [&](int a, int b, double ta, double tb) {
    const double dx = std::hypot(x[a] - ta, x[b] - tb);
    const double dy = std::hypot(y[a] - ta, y[b] - tb);
    return std::max(straight, dx + dy);
  };

  if (shape == Shape::slit) {
    const int a = axis % n, b = (axis + 1) % n;
    const double ua = x[a] - offset, va = y[a] - offset;
    if (ua * va >= 0.0) return straight;
    const double t = ua / (ua - va);
    const double cross_b = x[b] + t * (y[b] - x[b]);
    if (cross_b < from) return straight;
    return around(a, b, offset, from);
  }
  if (shape == Shape::lshape) {
    const double c0 = coord(corner, 0), c1 = coord(corner, 1);
    // Does the segment meet the removed quadrant {u >= c0, v >= c1}?
    double t_lo = 0.0, t_hi = 1.0;
    const double p0[2] = {x[0], x[1]}, d0[2] = {y[0] - x[0], y[1] - x[1]}, cc[2] = {c0, c1};
    for (int k = 0; k < 2; ++k) {
      if (d0[k] == 0.0) {
        if (p0[k] < cc[k]) return straight;
      } else {
        const double t = (cc[k] - p0[k]) / d0[k];
        if (d0[k] > 0) t_lo = std::max(t_lo, t);
        else t_hi = std::min(t_hi, t);
      }
    }
    if (t_lo > t_hi) return straight;
    return around(0, 1, c0, c1);
  }
  return straight;
}

std::size_t DomainMask::count() const {
  std::size_t c = 0;
  for (auto v : inside) c += v;
  return c;
}

DomainMask mask(const DomainSpec& domain, const Grid& grid) {
  DomainMask m{grid, std::vector<std::uint8_t>(grid.size(), 0)};
  std::vector<double> x(grid.dim());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid.center(i, x);
    m.inside[i] = domain.contains(x, grid.lo(), grid.hi()) ? 1 : 0;
  }
  if (m.count() == 0) throw SpecError("mask: domain '" + domain.to_string() + "' contains no cell centre");
  return m;
}

DomainMask full_mask(const Grid& grid) {
  return DomainMask{grid, std::vector<std::uint8_t>(grid.size(), 1)};
}

std::vector<double> restrict_values(const SampledField& f, const DomainMask& omega) {
  require_same_grid(f.grid, omega.grid, "restrict");
  std::vector<double> out(f.values);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!omega[i]) out[i] = 0.0;
  }
  return out;
}

SampledField zero_extend(std::span<const double> on_domain, const DomainMask& omega) {
  if (on_domain.size() != omega.count()) throw SpecError("zero_extend: value count does not match the mask");
  std::vector<double> out(omega.grid.size(), 0.0);
  std::size_t k = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (omega[i]) out[i] = on_domain[k++];
  }
  return make_field(omega.grid, std::move(out));
}

}  // namespace nlsob
