#include <doctest.h>

#include <cmath>
#include <random>

#include "nlsob/domain.hpp"
#include "nlsob/norms.hpp"
#include "nlsob/space_spec.hpp"
#include "nlsob/spec_text.hpp"
#include "nlsob/test_functions.hpp"

using namespace nlsob;

TEST_CASE("domain text round trip") {
  for (const char* text : {"full", "ball:center=[0.5;-0.25],radius=1.5", "halfspace:axis=1,offset=0.25", "lshape:corner=0",
                           "annulus:center=0,r1=0.5,r2=1", "slit:axis=0,offset=0,from=-0.5"}) {
    const auto d = DomainSpec::parse(text);
    CHECK(DomainSpec::parse(d.to_string()).to_string() == d.to_string());
  }
  CHECK_THROWS_AS(DomainSpec::parse("ball:radius=-1"), SpecError);
  CHECK_THROWS_AS(DomainSpec::parse("annulus:r1=2,r2=1"), SpecError);
  CHECK_THROWS_AS(DomainSpec::parse("snowflake:level=3"), SpecError);
  CHECK(DomainSpec::parse("ball:radius=1").is_convex());
  CHECK(DomainSpec::parse("halfspace:axis=0").is_convex());
  CHECK_FALSE(DomainSpec::parse("lshape:corner=0").is_convex());
  CHECK_FALSE(DomainSpec::parse("slit").is_convex());
}

TEST_CASE("masks") {
  const Grid g = make_cube_grid(1, -2.0, 2.0, 8);
  CHECK(mask(DomainSpec::parse("full"), g).is_full());
  const auto ball = mask(DomainSpec::parse("ball:center=0,radius=1"), g);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(ball[i] == (std::abs(g.center(i, 0)) < 1.0));
  CHECK(ball.count() == 4);
  CHECK(mask(DomainSpec::parse("slit:axis=0,offset=0.3"), g).is_full());
  CHECK_THROWS_AS(mask(DomainSpec::parse("ball:center=10,radius=1"), g), SpecError);

  const Grid g2 = make_cube_grid(2, -1.0, 1.0, 20);
  const auto l = mask(DomainSpec::parse("lshape:corner=0"), g2);
  CHECK(l.count() == 300);
  const auto annulus = mask(DomainSpec::parse("annulus:center=0,r1=0.3,r2=0.8"), g2);
  for (std::size_t i = 0; i < g2.size(); ++i) {
    const double r = std::hypot(g2.center(i, 0), g2.center(i, 1));
    CHECK(annulus[i] == (r > 0.3 && r < 0.8));
  }
}

TEST_CASE("masks are monotone under inclusion") {
  const Grid g = make_cube_grid(2, -2.0, 2.0, 24);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.2, 2.5);
  for (int k = 0; k < 20; ++k) {
    double r1 = u(rng), r2 = u(rng);
    if (r1 > r2) std::swap(r1, r2);
    const auto a = mask(DomainSpec::parse("ball:center=[0.1;-0.3],radius=" + format_number(r1)), g);
    const auto b = mask(DomainSpec::parse("ball:center=[0.1;-0.3],radius=" + format_number(r2)), g);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK((!a[i] || b[i]));
  }
}

TEST_CASE("zero extension") {
  const Grid g = make_cube_grid(2, -2.0, 2.0, 16);
  const auto omega = mask(DomainSpec::parse("ball:center=0,radius=1"), g);
  const auto ind = zero_extend(std::vector<double>(omega.count(), 1.0), omega);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(ind.values[i] == (omega[i] ? 1.0 : 0.0));

  const auto f = sample(TestFunctionSpec::parse("gaussian:sigma=1"), g);
  const auto full = full_mask(g);
  CHECK(zero_extend(restrict_values(f, full), full).values == f.values);
  CHECK_THROWS_AS(zero_extend(std::vector<double>(3, 1.0), omega), SpecError);
}

TEST_CASE("boundary distances and geodesic bounds") {
  const std::vector<double> lo{-1.0, -1.0}, hi{1.0, 1.0};
  const auto ball = DomainSpec::parse("ball:center=0,radius=0.5");
  const std::vector<double> x{0.1, 0.2};
  CHECK(ball.boundary_distance(x, lo, hi) == doctest::Approx(0.5 - std::hypot(0.1, 0.2)));
  const std::vector<double> y{-0.3, 0.1};
  CHECK(ball.geodesic_lower_bound(x, y, lo, hi) == doctest::Approx(std::hypot(0.4, 0.1)));

  const auto half = DomainSpec::parse("halfspace:axis=1,offset=0");
  CHECK(half.boundary_distance(x, lo, hi) == doctest::Approx(0.2));

  // Points on both sides of the slit must go around its tip at (0, 0).
  const auto slit = DomainSpec::parse("slit:axis=0,offset=0,from=0");
  const std::vector<double> a{-0.01, 0.5}, b{0.01, 0.5};
  CHECK(slit.geodesic_lower_bound(a, b, lo, hi) == doctest::Approx(2.0 * std::hypot(0.01, 0.5)));
}

TEST_CASE("epsilon falsifier") {
  const std::vector<double> lo{-1.0, -1.0}, hi{1.0, 1.0};
  FalsifierOptions opts;
  opts.samples = 2000;
  opts.seed = 9;
  for (const char* text : {"ball:center=0,radius=0.8", "halfspace:axis=0,offset=0", "full"}) {
    for (double eps : {0.1, 0.5}) {
      const auto cert = epsilon_falsifier(DomainSpec::parse(text), lo, hi, eps, opts);
      CHECK_MESSAGE(cert.verdict == Verdict::not_refuted, text);
      CHECK(cert.samples == opts.samples);
      CHECK(cert.certified_violations == 0);
    }
  }
  opts.samples = 10000;
  const auto half = epsilon_falsifier(DomainSpec::parse("halfspace:axis=0,offset=0"), lo, hi, 1.0, opts);
  CHECK(half.verdict == Verdict::not_refuted);

  const auto slit = DomainSpec::parse("slit:axis=0,offset=0,from=0");
  for (double eps : {0.1, 0.5, 1.0}) {
    const auto cert = epsilon_falsifier(slit, lo, hi, eps, opts);
    REQUIRE(cert.verdict == Verdict::refuted);
    CHECK(cert.witness_x.size() == 2);
    CHECK((cert.failed_condition == 3 || cert.failed_condition == 4));
    CHECK(cert.witness_ratio > 1.0);
    // The witness pair straddles the slit close to it.
    CHECK(cert.witness_x[0] * cert.witness_y[0] < 0.0);
    CHECK(std::abs(cert.witness_x[0]) <= 4 * 2.0 / 64);
    CHECK(std::abs(cert.witness_y[0]) <= 4 * 2.0 / 64);
  }

  // Same seed, same certificate.
  const auto a = epsilon_falsifier(slit, lo, hi, 0.5, opts), b = epsilon_falsifier(slit, lo, hi, 0.5, opts);
  CHECK(a.witness_x == b.witness_x);
  CHECK(a.certified_violations == b.certified_violations);

  opts.samples = 0;
  CHECK_THROWS_AS(epsilon_falsifier(slit, lo, hi, 0.5, opts), SpecError);
  opts.samples = 10;
  CHECK_THROWS_AS(epsilon_falsifier(slit, lo, hi, 1.5, opts), SpecError);
}
