#include <CLI11.hpp>
#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "nlsob/domain.hpp"
#include "nlsob/field_ops.hpp"
#include "nlsob/kernels.hpp"
#include "nlsob/maximal.hpp"
#include "nlsob/test_functions.hpp"

using namespace nlsob;

namespace {

using Clock = std::chrono::steady_clock;

/// Best wall time over `repeat` runs, and the last result.
std::pair<double, std::vector<double>> best_of(int repeat, const std::function<std::vector<double>()>& run) {
  double best = INFINITY;
  std::vector<double> out;
  for (int i = 0; i < repeat; ++i) {
    const auto t0 = Clock::now();
    out = run();
    best = std::min(best, std::chrono::duration<double>(Clock::now() - t0).count());
  }
  return {best, out};
}

double max_rel_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double scale = std::max({std::abs(a[i]), std::abs(b[i]), 1e-300});
    worst = std::max(worst, std::abs(a[i] - b[i]) / scale);
  }
  return worst;
}

void report(const std::string& name, int repeat, const std::function<std::vector<double>()>& parallel,
            const std::function<std::vector<double>()>& reference) {
  const auto [tp, vp] = best_of(repeat, parallel);
  const auto [tr, vr] = best_of(repeat, reference);
  std::printf("%-28s %10.4f %10.4f %8.2fx %12.3g\n", name.c_str(), tp, tr, tr / tp, max_rel_diff(vp, vr));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Times the parallel kernels against their serial references"};
  int n1 = 2048, n2 = 48, repeat = 3;
  app.add_option("--n1", n1, "cells of the 1D grid");
  app.add_option("--n2", n2, "cells per axis of the 2D grid");
  app.add_option("--repeat", repeat, "runs per kernel; the best time is kept");
  CLI11_PARSE(app, argc, argv);

  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-28s %10s %10s %9s %12s\n", "kernel", "parallel", "reference", "speedup", "max rel diff");
  for (int dim : {1, 2}) {
    const Grid g = make_cube_grid(dim, -3.0, 3.0, dim == 1 ? n1 : n2);
    const auto f = sample(TestFunctionSpec::parse("gaussian:sigma=1"), g);
    const auto omega = full_mask(g);
    const auto grad = magnitude(g, *f.gradient);
    const std::string tag = " " + std::to_string(dim) + "D N=" + std::to_string(g.points()[0]);

    report("gagliardo_rows" + tag, repeat,
           [&] { return gagliardo_rows(g, f.values, omega, 0.8, 2.0, Diagonal::equivalent_ball, grad); },
           [&] { return gagliardo_rows_reference(g, f.values, omega, 0.8, 2.0, Diagonal::equivalent_ball, grad); });

    const std::vector<double> lambdas{0.1, 0.3, 1.0, 3.0, 10.0};
    const auto policy = KernelPolicy::parse("policy:diagonal=ball,subsample=4,radius=1");
    report("bsvy_rows" + tag, repeat,
           [&] { return bsvy_rows(g, f.values, *f.gradient, omega, 1.0, 1.0, policy, lambdas); },
           [&] { return bsvy_rows_reference(g, f.values, *f.gradient, omega, 1.0, 1.0, policy, lambdas); });

    const auto radii = maximal_radii(g);
    report("hl_maximal" + tag, repeat, [&] { return hl_maximal_values(g, f.values, radii); },
           [&] { return hl_maximal_reference(g, f.values, radii); });
  }
  return 0;
}
