#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "nlsob/field_ops.hpp"
#include "nlsob/grid.hpp"
#include "nlsob/reduce.hpp"
#include "nlsob/spec_text.hpp"
#include "nlsob/test_functions.hpp"

using namespace nlsob;

TEST_CASE("make_grid centres and sizes") {
  const Grid g = make_cube_grid(1, 0.0, 1.0, 4);
  CHECK(g.size() == 4);
  const double expected[] = {0.125, 0.375, 0.625, 0.875};
  for (int i = 0; i < 4; ++i) CHECK(g.center(static_cast<std::size_t>(i), 0) == expected[i]);

  const Grid g2 = make_cube_grid(2, -1.0, 1.0, 8);
  CHECK(g2.size() == 64);
  CHECK(g2.h(0) == 0.25);
  CHECK(g2.h(1) == 0.25);
  CHECK(g2.cell_volume() == doctest::Approx(0.0625));
}

TEST_CASE("make_grid rejects bad input") {
  CHECK_THROWS_AS(make_cube_grid(1, 1.0, 0.0, 4), SpecError);
  CHECK_THROWS_AS(make_cube_grid(1, 0.0, 1.0, 1), SpecError);
  CHECK_THROWS_AS(make_cube_grid(1, 0.0, 1.0, 0), SpecError);
  CHECK_THROWS_AS(make_cube_grid(1, 0.0, INFINITY, 4), SpecError);
  CHECK_THROWS(parse_grid("n=1,L=2"));
}

TEST_CASE("grid text forms") {
  const Grid a = parse_grid("n=2,L=5,N=16");
  CHECK(a.lo(1) == -5.0);
  CHECK(a.points(1) == 16);
  const Grid b = parse_grid("n=1,lo=0,hi=1,N=64");
  CHECK(b.hi(0) == 1.0);
  CHECK(parse_grid(a.describe()) == a);
}

TEST_CASE("flat index runs with axis 0 fastest") {
  const Grid g = make_grid(2, std::vector<double>{0, 0}, std::vector<double>{1, 2}, std::vector<int>{4, 3});
  CHECK(g.index(1, 0) == 1);
  CHECK(g.index(4, 0) == 0);
  CHECK(g.index(4, 1) == 1);
  const std::vector<double> x{0.6, 1.9};
  CHECK(g.locate(x) == 2 + 2 * 4);
}

TEST_CASE("sample evaluates closed forms at centres") {
  const Grid g = make_cube_grid(1, 0.0, 1.0, 4);
  const auto f = sample(TestFunctionSpec::parse("gaussian:sigma=1,center=0"), g);
  CHECK(f.values[0] == doctest::Approx(std::exp(-0.125 * 0.125)).epsilon(1e-15));

  const Grid h = make_cube_grid(1, -2.0, 2.0, 8);
  const auto c = sample(TestFunctionSpec::parse("coordinate:axis=0"), h);
  for (std::size_t i = 0; i < h.size(); ++i) {
    CHECK(c.values[i] == h.center(i, 0));
    CHECK((*c.gradient)[i] == 1.0);
  }
  const auto tent = TestFunctionSpec::parse("tent:width=2,center=0");
  const std::vector<double> x{0.5};
  CHECK(tent.value(x) == doctest::Approx(0.5));
}

TEST_CASE("sample is deterministic") {
  const Grid g = make_cube_grid(2, -3.0, 3.0, 32);
  const auto spec = TestFunctionSpec::parse("polygauss:degree=2,sigma=0.7,center=[0.1;-0.2]");
  const auto a = sample(spec, g), b = sample(spec, g);
  CHECK(a.values == b.values);
  CHECK(*a.gradient == *b.gradient);
}

TEST_CASE("test function specs round-trip and reject bad parameters") {
  for (const char* text : {"gaussian:sigma=0.5,center=1", "tent:width=3,center=0", "coordinate:axis=1",
                           "bump:radius=2,center=0", "polygauss:degree=3,sigma=1,center=0", "constant:value=-2.5",
                           "indicator:lo=[0;-1],hi=[1;0.5]"}) {
    const auto spec = TestFunctionSpec::parse(text);
    CHECK(TestFunctionSpec::parse(spec.to_string()).to_string() == spec.to_string());
  }
  CHECK_THROWS_AS(TestFunctionSpec::parse("gaussian:sigma=0"), SpecError);
  CHECK_THROWS_AS(TestFunctionSpec::parse("tent:width=-1"), SpecError);
  CHECK_THROWS_AS(TestFunctionSpec::parse("bump:radius=0"), SpecError);
  CHECK_THROWS_AS(TestFunctionSpec::parse("gaussian:sigam=1"), SpecError);
  CHECK_THROWS_AS(TestFunctionSpec::parse("wavelet:scale=1"), SpecError);
  CHECK_THROWS_AS(TestFunctionSpec::parse("indicator:lo=1,hi=0"), SpecError);
}

TEST_CASE("constant and indicator functions") {
  const Grid g = make_cube_grid(1, -1.0, 2.0, 12);
  const auto c = sample(TestFunctionSpec::parse("constant:value=3"), g);
  const auto ind = sample(TestFunctionSpec::parse("indicator:lo=0,hi=1"), g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(c.values[i] == 3.0);
    const double x = g.center(i, 0);
    CHECK(ind.values[i] == (x >= 0.0 && x < 1.0 ? 1.0 : 0.0));
    CHECK((*c.gradient)[i] == 0.0);
    CHECK((*ind.gradient)[i] == 0.0);
  }
  const Grid g2 = make_cube_grid(2, -1.0, 1.0, 8);
  const auto box = sample(TestFunctionSpec::parse("indicator:lo=[0;-1],hi=[1;0]"), g2);
  CHECK(pairwise_sum(box.values) == doctest::Approx(16.0));
}

TEST_CASE("analytic gradients match central differences of the closed form") {
  for (const char* text : {"gaussian:sigma=0.8,center=[0.3;-0.1]", "bump:radius=1.5,center=0",
                           "polygauss:degree=2,sigma=1,center=0", "tent:width=3,center=[0.05;0.05]"}) {
    const auto spec = TestFunctionSpec::parse(text);
    const std::vector<double> x{0.41, -0.27};
    std::vector<double> grad(2);
    spec.gradient(x, grad);
    for (int a = 0; a < 2; ++a) {
      const double eps = 1e-6;
      auto xp = x, xm = x;
      xp[a] += eps;
      xm[a] -= eps;
      CHECK(grad[a] == doctest::Approx((spec.value(xp) - spec.value(xm)) / (2 * eps)).epsilon(1e-6));
    }
  }
}

TEST_CASE("truncate") {
  const Grid g = make_cube_grid(1, -2.0, 2.0, 16);
  const auto three = make_field(g, std::vector<double>(g.size(), 3.0));
  for (double v : truncate(three, 1.0).values) CHECK(v == 1.0);

  const auto x = sample(TestFunctionSpec::parse("coordinate:axis=0"), g);
  const auto t = truncate(x, 1.0);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(t.values[i] == std::clamp(x.values[i], -1.0, 1.0));
  CHECK_FALSE(t.gradient.has_value());

  const auto gauss = sample(TestFunctionSpec::parse("gaussian:sigma=1"), g);
  CHECK(truncate(gauss, 2.0).values == gauss.values);
  CHECK(truncate(truncate(x, 0.7), 0.7).values == truncate(x, 0.7).values);
  CHECK(truncate(x, 5.0).values == x.values);
  CHECK_THROWS_AS(truncate(x, 0.0), SpecError);
  CHECK_THROWS_AS(truncate(x, -1.0), SpecError);
}

TEST_CASE("gradient_fd") {
  const Grid g = make_cube_grid(1, -1.0, 1.0, 10);
  const auto x = sample(TestFunctionSpec::parse("coordinate:axis=0"), g);
  for (double d : gradient_fd(x)) CHECK(d == doctest::Approx(1.0).epsilon(1e-13));

  std::vector<double> sq(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) sq[i] = g.center(i, 0) * g.center(i, 0);
  const auto d2 = gradient_fd(make_field(g, sq));
  for (std::size_t i = 1; i + 1 < g.size(); ++i) CHECK(d2[i] == doctest::Approx(2.0 * g.center(i, 0)).scale(1.0));
  // One-sided three-point stencils are exact on quadratics too.
  CHECK(d2.front() == doctest::Approx(2.0 * g.center(0, 0)).scale(1.0));

  CHECK_THROWS_AS(gradient_fd(make_field(make_cube_grid(1, 0.0, 1.0, 2), {1.0, 2.0})), SpecError);
}

TEST_CASE("gradient_fd converges at second order against the analytic gradient") {
  const auto spec = TestFunctionSpec::parse("gaussian:sigma=1");
  double previous = 0.0;
  for (int N : {64, 128, 256}) {
    const Grid g = make_cube_grid(2, -4.0, 4.0, N);
    const auto f = sample(spec, g);
    const auto fd = gradient_fd(f);
    double err = 0.0;
    for (std::size_t i = 0; i < fd.size(); ++i) err = std::max(err, std::abs(fd[i] - (*f.gradient)[i]));
    const double h = g.h(0);
    CHECK(err <= 1.0 * h * h);
    if (previous > 0.0) CHECK(err < 0.3 * previous);
    previous = err;
  }
}

TEST_CASE("pairwise_sum is exact on small integers and partition independent") {
  std::vector<double> v(1000);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i % 7);
  double expected = 0.0;
  for (double x : v) expected += x;
  CHECK(pairwise_sum(v) == expected);
  CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
  CHECK(max_of(v) == 6.0);
}

TEST_CASE("spec text helpers") {
  const auto t = SpecText::parse("tag:a=1,b=[2;3],c=inf");
  CHECK(t.tag() == "tag");
  CHECK(t.number("a") == 1.0);
  CHECK(t.vector_or("b", {}) == std::vector<double>{2.0, 3.0});
  CHECK(std::isinf(t.number("c")));
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(INFINITY) == "inf");
  CHECK_THROWS_AS(SpecText::parse(":a=1"), SpecError);
}
