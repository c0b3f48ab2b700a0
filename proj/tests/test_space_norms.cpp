#include <doctest.h>

#include <cmath>
#include <random>

#include "nlsob/ball_sums.hpp"
#include "nlsob/domain.hpp"
#include "nlsob/dyadic.hpp"
#include "nlsob/field_ops.hpp"
#include "nlsob/norms.hpp"
#include "nlsob/space_spec.hpp"
#include "nlsob/spec_text.hpp"
#include "nlsob/weight.hpp"
#include "nlsob/test_functions.hpp"
#include "nlsob_verify/oracles.hpp"

using namespace nlsob;

namespace {

oracle::Box box_of(const Grid& g) {
  oracle::Box b;
  for (int a = 0; a < g.dim(); ++a) {
    b.lo.push_back(g.lo(a));
    b.hi.push_back(g.hi(a));
    b.n.push_back(g.points(a));
  }
  return b;
}

SampledField random_field(const Grid& g, std::mt19937_64& rng, double zero_fraction = 0.2) {
  std::uniform_real_distribution<double> u(-1.0, 1.0), z(0.0, 1.0);
  std::vector<double> v(g.size());
  for (double& x : v) x = z(rng) < zero_fraction ? 0.0 : u(rng);
  return make_field(g, v);
}

SampledField indicator(const Grid& g, double a, double b) {
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) v[i] = (g.center(i, 0) > a && g.center(i, 0) < b) ? 1.0 : 0.0;
  return make_field(g, v);
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// 1D members of the catalog with parameters in the Banach range.
const std::vector<std::string> kSpaces1D = {
    "lebesgue:p=1",          "lebesgue:p=2.5",         "weighted:r=2,a=-0.5,center=0.1",
    "lorentz:r=3,tau=2",     "orlicz:p=2",             "orlicz:p1=1.5,p2=3",
    "orlicz-slice:p=2,r=2,t=0.5", "morrey:r=2,alpha=4", "bbmorrey:q=2,p=3,r=4,tau=inf",
    "herz-local:p=2,q=3,a=0.25,xi=0", "herz-global:p=2,q=2,a=-0.3,stride=4",
    "variable:base=2,slope=0.5,axis=0"};

}  // namespace

TEST_CASE("space spec text round trip and validation") {
  for (const auto& text : kSpaces1D) CHECK(to_string(parse_space(to_string(parse_space(text)))) == to_string(parse_space(text)));
  CHECK(to_string(parse_space("mixed:r=[2;3]")) == "mixed:r=[2;3]");
  CHECK_THROWS_AS(validate(parse_space("lorentz:r=1,tau=2"), 1), SpecError);
  CHECK_THROWS_AS(validate(parse_space("morrey:r=3,alpha=2"), 1), SpecError);
  CHECK_THROWS_AS(validate(parse_space("bbmorrey:q=3,p=2,r=4,tau=2"), 1), SpecError);
  CHECK_THROWS_AS(validate(parse_space("mixed:r=[2;3]"), 1), SpecError);
  CHECK_THROWS_AS(validate(parse_space("lebesgue:p=0.5"), 1), SpecError);
  CHECK_THROWS_AS(parse_space("sobolev:p=2"), SpecError);
}

TEST_CASE("norm examples") {
  const Grid unit = make_cube_grid(1, 0.0, 1.0, 50);
  const auto one = make_field(unit, std::vector<double>(unit.size(), 1.0));
  CHECK(norm(one, parse_space("lebesgue:p=2"), full_mask(unit)) == doctest::Approx(1.0).epsilon(1e-14));

  const Grid g = make_cube_grid(1, -3.0, 3.0, 96);
  std::mt19937_64 rng(3);
  const auto f = random_field(g, rng);
  CHECK(rel(norm(f, parse_space("morrey:r=2,alpha=2"), full_mask(g)),
            norm(f, parse_space("lebesgue:p=2"), full_mask(g))) < 1e-12);

  const Grid g2 = make_cube_grid(2, -1.0, 1.0, 12);
  const auto f2 = random_field(g2, rng);
  CHECK(rel(norm(f2, parse_space("mixed:r=[2;2]"), full_mask(g2)), norm(f2, parse_space("lebesgue:p=2"), full_mask(g2))) <
        1e-12);
}

TEST_CASE("weighted lebesgue") {
  const Grid g = make_cube_grid(1, 0.0, 1.0, 400);
  std::mt19937_64 rng(5);
  const auto f = random_field(g, rng);
  const std::vector<double> unit(g.size(), 1.0);
  CHECK(weighted_lebesgue_norm(g, f.values, 3.0, unit) == lebesgue_norm(g, f.values, 3.0));

  std::vector<double> x(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) x[i] = g.center(i, 0);
  const std::vector<double> ones(g.size(), 1.0);
  // The midpoint rule is exact for a linear weight.
  CHECK(weighted_lebesgue_norm(g, ones, 1.0, x) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(weighted_lebesgue_norm(g, std::vector<double>(g.size(), 0.0), 2.0, x) == 0.0);

  auto negative = x;
  negative[7] = -1.0;
  CHECK_THROWS_AS(weighted_lebesgue_norm(g, ones, 2.0, negative), SpecError);
}

TEST_CASE("decreasing rearrangement") {
  const Grid g = make_cube_grid(1, -2.0, 2.0, 400);
  const auto e = indicator(g, -0.3, 0.4);
  const auto r = decreasing_rearrangement(g, e.values);
  REQUIRE(r.values.size() == 1);
  CHECK(r.values[0] == 1.0);
  CHECK(r.breaks[0] == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(r(0.69) == 1.0);
  CHECK(r(0.71) == 0.0);

  std::vector<double> tent(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) tent[i] = std::max(0.0, 1.0 - std::abs(g.center(i, 0)));
  const auto t = decreasing_rearrangement(g, tent);
  for (double s : {0.05, 0.5, 1.0, 1.5, 1.95}) CHECK(std::abs(t(s) - std::max(0.0, 1.0 - s / 2.0)) <= g.h(0));
  for (std::size_t k = 1; k < t.values.size(); ++k) CHECK(t.values[k] < t.values[k - 1]);

  const auto c = decreasing_rearrangement(g, std::vector<double>(g.size(), 0.7));
  CHECK(c.values == std::vector<double>{0.7});
  CHECK(c.breaks.back() == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("lorentz norm") {
  const Grid g = make_cube_grid(1, 0.0, 1.0, 1000);
  const auto e = indicator(g, 0.0, 0.5);
  CHECK(lorentz_norm(g, e.values, 2.0, 3.0) == doctest::Approx(std::pow(2.0 / 3.0, 1.0 / 3.0) * std::sqrt(0.5)).epsilon(1e-12));
  std::mt19937_64 rng(11);
  const auto f = random_field(g, rng);
  CHECK(rel(lorentz_norm(g, f.values, 2.5, 2.5), lebesgue_norm(g, f.values, 2.5)) < 1e-12);
  CHECK(lorentz_norm(g, std::vector<double>(g.size(), 0.0), 2.0, 3.0) == 0.0);
  CHECK(rel(lorentz_norm(g, f.values, 2.0, 3.0), oracle::lorentz(box_of(g), f.values, 2.0, 3.0)) < 1e-12);
}

TEST_CASE("luxemburg norm") {
  const Grid g = make_cube_grid(1, 0.0, 1.0, 200);
  std::mt19937_64 rng(13);
  const auto f = random_field(g, rng);
  CHECK(rel(luxemburg_norm(g, f.values, OrliczFunction::power(3.0)), lebesgue_norm(g, f.values, 3.0)) < 1e-12);

  const auto e = indicator(g, 0.0, 0.25);
  std::vector<double> ce(e.values);
  for (double& v : ce) v *= 1.7;
  CHECK(luxemburg_norm(g, ce, OrliczFunction::power(2.0)) == doctest::Approx(1.7 * 0.5).epsilon(1e-12));

  const std::vector<double> ones(g.size(), 1.0);
  CHECK(luxemburg_norm(g, ones, OrliczFunction::two_power(1.5, 3.0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(luxemburg_norm(g, std::vector<double>(g.size(), 0.0), OrliczFunction::power(2.0)) == 0.0);
}

TEST_CASE("orlicz slice norm") {
  const Grid g = make_cube_grid(1, -4.0, 4.0, 320);
  const std::vector<double> c(g.size(), 2.0);
  // The ratio is exactly c where B(x, t) stays inside the box and drops
  // below c within t of the edge, where f vanishes outside.
  const double v = orlicz_slice_norm(g, c, OrliczFunction::power(2.0), 2.0, 0.5);
  CHECK(v <= 2.0 * std::sqrt(8.0));
  CHECK(v >= 2.0 * std::sqrt(7.0));
  CHECK(orlicz_slice_norm(g, std::vector<double>(g.size(), 0.0), OrliczFunction::power(2.0), 2.0, 0.5) == 0.0);
  CHECK_THROWS_AS(orlicz_slice_norm(g, c, OrliczFunction::power(2.0), 2.0, 0.001), SpecError);
}

TEST_CASE("morrey norm") {
  const Grid g = make_cube_grid(1, -2.0, 3.0, 320);
  const auto e = indicator(g, 0.0, 1.0);
  const auto m = morrey_norm(g, e.values, 1.0, 2.0, dyadic_radii(g));
  // One-variable maximisation gives 1 at |B| = 1; lattice balls have odd cell counts.
  CHECK(m.value <= 1.0 + 1e-12);
  CHECK(m.value >= 0.98);
  CHECK(morrey_norm(g, std::vector<double>(g.size(), 0.0), 2.0, 3.0, dyadic_radii(g)).value == 0.0);
  CHECK_THROWS_AS(morrey_norm(g, e.values, 2.0, 3.0, {}), SpecError);
}

TEST_CASE("dyadic cubes") {
  const std::vector<double> lo{0.0}, hi{2.0};
  const auto cubes = dyadic_cubes(DyadicSystem{{0.0}, 0, 0}, lo, hi);
  REQUIRE(cubes.size() == 2);
  CHECK(cubes[0].lo[0] == 0.0);
  CHECK(cubes[0].hi[0] == 1.0);
  CHECK(cubes[1].hi[0] == 2.0);

  const std::vector<double> lo2{-1.0}, hi2{1.0};
  for (const auto& q : dyadic_cubes(DyadicSystem{{1.0 / 3.0}, 0, 0}, lo2, hi2))
    CHECK(q.lo[0] == doctest::Approx(static_cast<double>(q.m[0]) + 1.0 / 3.0));

  // Tiling: at each level the cubes meeting the box cover it without overlap.
  const std::vector<double> blo{-1.3, 0.2}, bhi{2.1, 3.7};
  for (int level = -2; level <= 2; ++level) {
    const auto tiles = dyadic_cubes(DyadicSystem{{2.0 / 3.0, 1.0 / 3.0}, level, level}, blo, bhi);
    double covered = 0.0;
    for (const auto& q : tiles) {
      double v = 1.0;
      for (int a = 0; a < 2; ++a) v *= std::max(0.0, std::min(q.hi[a], bhi[a]) - std::max(q.lo[a], blo[a]));
      covered += v;
    }
    CHECK(covered == doctest::Approx(3.4 * 3.5).epsilon(1e-12));
  }
  CHECK(dyadic_shifts(2).size() == 9);
}

TEST_CASE("dyadic cover of random balls") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> c(-10.0, 10.0), lr(-6.0, 4.0);
  for (int n = 1; n <= 3; ++n) {
    for (int k = 0; k < 50; ++k) {
      std::vector<double> center(n);
      for (double& x : center) x = c(rng);
      const double radius = std::exp2(lr(rng));
      const auto cover = best_dyadic_cover(center, radius);
      REQUIRE(cover.found);
      CHECK(cover.volume_ratio <= dyadic_cover_bound(n));
      for (int a = 0; a < n; ++a) {
        CHECK(cover.cube.lo[a] <= center[a] - radius);
        CHECK(cover.cube.hi[a] >= center[a] + radius);
      }
    }
  }
}

TEST_CASE("besov bourgain morrey norm") {
  const Grid g = make_cube_grid(1, -2.0, 2.0, 64);
  const auto e = indicator(g, 0.0, 1.0);
  const auto levels = LevelRange{-3, 3};
  CHECK(rel(bbm_morrey_norm(g, e.values, 2.0, 3.0, 4.0, INFINITY, levels),
            oracle::bbm_morrey(box_of(g), e.values, 2.0, 3.0, 4.0, INFINITY, -3, 3)) < 1e-12);

  std::mt19937_64 rng(19);
  const auto f = random_field(g, rng);
  const auto dl = default_levels(g);
  CHECK(rel(bbm_morrey_norm(g, f.values, 2.0, 2.0, 2.0, INFINITY, dl), lebesgue_norm(g, f.values, 2.0)) < 1e-12);
  CHECK(rel(bbm_morrey_norm(g, f.values, 1.5, 2.0, 3.0, 2.5, dl),
            oracle::bbm_morrey(box_of(g), f.values, 1.5, 2.0, 3.0, 2.5, dl.min, dl.max)) < 1e-12);
  CHECK(bbm_morrey_norm(g, std::vector<double>(g.size(), 0.0), 2.0, 3.0, 4.0, 2.0, dl) == 0.0);

  const Grid g2 = make_cube_grid(2, -1.0, 1.0, 8);
  const auto f2 = random_field(g2, rng);
  const auto dl2 = default_levels(g2);
  CHECK(rel(bbm_morrey_norm(g2, f2.values, 2.0, 3.0, 4.0, INFINITY, dl2),
            oracle::bbm_morrey(box_of(g2), f2.values, 2.0, 3.0, 4.0, INFINITY, dl2.min, dl2.max)) < 1e-12);
}

TEST_CASE("herz norms") {
  const Grid g = make_cube_grid(1, -2.0, 2.0, 64);
  std::mt19937_64 rng(23);
  const auto f = random_field(g, rng);
  const std::vector<double> xi{0.0};
  CHECK(rel(herz_local_norm(g, f.values, 2.0, 2.0, HerzWeight{0.0}, xi), lebesgue_norm(g, f.values, 2.0)) < 1e-12);

  const auto ball = indicator(g, -1.0, 1.0);
  CHECK(rel(herz_local_norm(g, ball.values, 2.0, 2.0, HerzWeight{1.0}, xi),
            oracle::herz_local(box_of(g), ball.values, 2.0, 2.0, 1.0, xi)) < 1e-10);
  const std::vector<double> off{0.3};
  CHECK(rel(herz_local_norm(g, f.values, 1.5, 3.0, HerzWeight{-0.4}, off),
            oracle::herz_local(box_of(g), f.values, 1.5, 3.0, -0.4, off)) < 1e-12);
  CHECK(herz_local_norm(g, std::vector<double>(g.size(), 0.0), 2.0, 2.0, HerzWeight{1.0}, xi) == 0.0);

  // Radial profile with a < 0: the best centre is the origin.
  const Grid h = make_cube_grid(1, -4.0, 4.0, 128);
  std::vector<double> radial(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) radial[i] = std::exp(-h.center(i, 0) * h.center(i, 0));
  const auto global = herz_global_norm(h, radial, 2.0, 2.0, HerzWeight{-0.3}, herz_xi_grid(h, 4));
  CHECK(std::abs(global.xi[0]) <= 4 * h.h(0));

  const std::vector<std::vector<double>> single{{0.5}};
  CHECK(herz_global_norm(h, radial, 2.0, 2.0, HerzWeight{0.2}, single).value ==
        herz_local_norm(h, radial, 2.0, 2.0, HerzWeight{0.2}, single[0]));
  CHECK_THROWS_AS(herz_global_norm(h, radial, 2.0, 2.0, HerzWeight{0.2}, {}), SpecError);
}

TEST_CASE("mixed norm") {
  const Grid g = make_cube_grid(2, -1.0, 1.0, 16);
  std::mt19937_64 rng(29);
  const auto f = random_field(g, rng);
  const std::vector<double> r{3.0, 3.0};
  CHECK(rel(mixed_norm(g, f.values, r), lebesgue_norm(g, f.values, 3.0)) < 1e-12);

  std::uniform_real_distribution<double> u(0.1, 1.0);
  std::vector<double> gx(16), hy(16), v(g.size());
  for (double& x : gx) x = u(rng);
  for (double& y : hy) y = u(rng);
  for (std::size_t i = 0; i < g.size(); ++i) v[i] = gx[g.index(i, 0)] * hy[g.index(i, 1)];
  const Grid line = make_cube_grid(1, -1.0, 1.0, 16);
  const std::vector<double> r2{2.0, 3.0};
  CHECK(rel(mixed_norm(g, v, r2), lebesgue_norm(line, gx, 2.0) * lebesgue_norm(line, hy, 3.0)) < 1e-12);
  CHECK(mixed_norm(g, std::vector<double>(g.size(), 0.0), r2) == 0.0);
  CHECK_THROWS_AS(mixed_norm(g, v, std::vector<double>{2.0}), SpecError);
}

TEST_CASE("variable lebesgue norm") {
  const Grid g = make_cube_grid(1, 0.0, 1.0, 400);
  std::mt19937_64 rng(31);
  const auto f = random_field(g, rng);
  const std::vector<double> constant(g.size(), 2.5);
  CHECK(rel(variable_lebesgue_norm(g, f.values, constant), lebesgue_norm(g, f.values, 2.5)) < 1e-9);

  const auto e = indicator(g, 0.0, 0.3);
  CHECK(rel(variable_lebesgue_norm(g, e.values, constant), std::pow(0.3, 1.0 / 2.5)) < 1e-9);

  // r(x) = 2 + x: the modular of the constant 1 is the integral of lambda^{-(2+x)}.
  const auto r = sample_exponent(space::VariableLebesgue{2.0, 1.0, 0}, g);
  const std::vector<double> ones(g.size(), 1.0);
  const double lambda = oracle::bisect_root(
      [](double l) { return oracle::integrate([l](double x) { return std::pow(l, -(2.0 + x)); }, 0.0, 1.0) - 1.0; },
      0.1, 10.0);
  CHECK(lambda == doctest::Approx(1.0));
  CHECK(rel(variable_lebesgue_norm(g, ones, r), lambda) < 1e-8);
  std::vector<double> half(g.size(), 0.5);
  const double lambda_half = oracle::bisect_root(
      [](double l) {
        return oracle::integrate([l](double x) { return std::pow(0.5 / l, 2.0 + x); }, 0.0, 1.0) - 1.0;
      },
      1e-3, 10.0);
  CHECK(rel(variable_lebesgue_norm(g, half, r), lambda_half) < 1e-6);
}

TEST_CASE("convexify satisfies the norm identity") {
  CHECK(to_string(convexify(parse_space("lebesgue:p=4"), 0.5)) == "lebesgue:p=2");
  CHECK(to_string(convexify(parse_space("lorentz:r=4,tau=6"), 0.5)) == "lorentz:r=2,tau=3");
  CHECK_THROWS_AS(convexify(parse_space("lorentz:r=2,tau=3"), 0.25), SpecError);

  const Grid g = make_cube_grid(1, -4.0, 4.0, 256);
  const auto f = sample(TestFunctionSpec::parse("gaussian:sigma=1"), g);
  const auto omega = full_mask(g);
  CHECK(rel(std::sqrt(norm(pow_abs(f, 2.0), parse_space("lebesgue:p=2"), omega)),
            norm(f, parse_space("lebesgue:p=4"), omega)) < 1e-12);

  std::mt19937_64 rng(37);
  const auto r = random_field(g, rng);
  for (const char* text : {"lebesgue:p=4", "weighted:r=4,a=0.5,center=0", "lorentz:r=4,tau=6", "orlicz:p1=3,p2=5",
                           "orlicz-slice:p=4,r=4,t=0.5", "morrey:r=4,alpha=6", "bbmorrey:q=4,p=5,r=6,tau=8",
                           "herz-local:p=4,q=6,a=0.5,xi=0", "herz-global:p=4,q=4,a=-0.2,stride=8",
                           "variable:base=4,slope=0.2,axis=0"}) {
    const auto X = parse_space(text);
    for (double e : {0.5, 2.0}) {
      const auto Y = convexify(X, e);
      const double lhs = std::pow(norm(pow_abs(r, 1.0 / e), Y, omega), e);
      CHECK_MESSAGE(rel(lhs, norm(r, X, omega)) < 1e-9, text << " e=" << e);
    }
  }
}

TEST_CASE("matuszewska orlicz indices") {
  const auto zero = mo_indices(HerzWeight{0.0});
  CHECK(zero.m0 == 0.0);
  CHECK(zero.M_inf == 0.0);
  const auto neg = mo_indices(HerzWeight{-0.3});
  CHECK(neg.m0 == -0.3);
  CHECK(neg.M0 == -0.3);
  CHECK(neg.m_inf == -0.3);
  CHECK(neg.M_inf == -0.3);
  // -n/p < a < n(1/s - 1/p) with n = 1, p = 2, s = 1.
  CHECK(local_herz_hypothesis(HerzWeight{0.25}, 1, 2.0, 1.0));
  CHECK_FALSE(local_herz_hypothesis(HerzWeight{-0.6}, 1, 2.0, 1.0));
  CHECK_FALSE(local_herz_hypothesis(HerzWeight{0.6}, 1, 2.0, 1.0));
}

TEST_CASE("restriction and zero extension") {
  const Grid g = make_cube_grid(1, -2.0, 2.0, 80);
  const auto omega = mask(DomainSpec::parse("ball:center=0.5,radius=0.5"), g);
  const std::vector<double> ones(omega.count(), 1.0);
  CHECK(restriction_norm(ones, parse_space("lebesgue:p=2"), omega) == doctest::Approx(1.0).epsilon(1e-14));

  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> on(omega.count());
  for (double& v : on) v = u(rng);
  const auto ext = zero_extend(on, omega);
  for (const auto& text : kSpaces1D) {
    const auto X = parse_space(text);
    CHECK(restriction_norm(on, X, omega) == norm(ext, X, full_mask(g)));
    CHECK(norm(ext, X, omega) == norm(ext, X, full_mask(g)));
  }
}

TEST_CASE("lattice property, homogeneity, triangle inequality and monotone convergence") {
  const Grid g = make_cube_grid(1, -2.0, 2.0, 64);
  const auto omega = full_mask(g);
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u01(0.0, 1.0), cu(-5.0, 5.0);
  for (const auto& text : kSpaces1D) {
    const auto X = parse_space(text);
    for (int trial = 0; trial < 5; ++trial) {
      const auto f = random_field(g, rng);
      const auto h = random_field(g, rng);
      std::vector<double> smaller(g.size()), sum(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) {
        smaller[i] = f.values[i] * u01(rng);
        sum[i] = f.values[i] + h.values[i];
      }
      const double nf = norm(f, X, omega);
      CHECK_MESSAGE(norm(make_field(g, smaller), X, omega) <= nf * (1 + 1e-12), text);
      const double c = cu(rng);
      CHECK_MESSAGE(rel(norm(scaled(f, c), X, omega), std::abs(c) * nf) < 1e-11, text);
      CHECK_MESSAGE(norm(make_field(g, sum), X, omega) <= nf + norm(h, X, omega) + 1e-10, text);

      double previous = 0.0;
      for (double m : {0.1, 0.25, 0.5, 0.75, 1.0}) {
        const double v = norm(truncate(f, m), X, omega);
        CHECK_MESSAGE(v >= previous * (1 - 1e-12), text);
        previous = v;
      }
      CHECK_MESSAGE(rel(previous, nf) < 1e-12, text);
    }
  }
  const Grid g2 = make_cube_grid(2, -1.0, 1.0, 10);
  const auto mixed = parse_space("mixed:r=[2;3]");
  for (int trial = 0; trial < 5; ++trial) {
    const auto f = random_field(g2, rng), h = random_field(g2, rng);
    std::vector<double> sum(g2.size());
    for (std::size_t i = 0; i < g2.size(); ++i) sum[i] = f.values[i] + h.values[i];
    CHECK(norm(make_field(g2, sum), mixed, full_mask(g2)) <=
          norm(f, mixed, full_mask(g2)) + norm(h, mixed, full_mask(g2)) + 1e-10);
  }
}

TEST_CASE("lebesgue norm matches the oracle") {
  std::mt19937_64 rng(47);
  for (int n = 1; n <= 3; ++n) {
    const Grid g = make_cube_grid(n, -1.0, 1.0, n == 3 ? 4 : (n == 2 ? 8 : 64));
    const auto f = random_field(g, rng);
    for (double p : {1.0, 2.0, 3.5})
      CHECK(rel(lebesgue_norm(g, f.values, p), oracle::lebesgue(box_of(g), f.values, p)) < 1e-12);
  }
}

TEST_CASE("associate norms") {
  const Grid g = make_cube_grid(1, -3.0, 3.0, 128);
  const auto f = sample(TestFunctionSpec::parse("gaussian:sigma=1"), g);
  const auto omega = full_mask(g);
  const auto est = associate_norm_empirical(f, parse_space("lebesgue:p=2"), omega, 8, 1);
  const double l2 = norm(f, parse_space("lebesgue:p=2"), omega);
  CHECK(est.lower_bound <= l2 * (1 + 1e-12));
  CHECK(est.lower_bound >= l2 * (1 - 1e-12));

  const auto w = associate_norm_empirical(f, parse_space("weighted:r=2,a=0.5,center=0"), omega, 8, 1);
  REQUIRE(w.exact.has_value());
  const auto wt = sample_weight(PowerWeight::parse("power:a=0.5,center=0"), g);
  std::vector<double> inv(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) inv[i] = 1.0 / wt.samples[i];
  CHECK(rel(*w.exact, weighted_lebesgue_norm(g, f.values, 2.0, inv)) < 1e-12);
  CHECK(w.lower_bound <= *w.exact * (1 + 1e-12));

  const auto zero = make_field(g, std::vector<double>(g.size(), 0.0));
  CHECK(associate_norm_empirical(zero, parse_space("lebesgue:p=2"), omega, 4, 1).lower_bound == 0.0);
}
