#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nlsob/config.hpp"
#include "nlsob/experiments.hpp"
#include "nlsob/functionals.hpp"
#include "nlsob/report.hpp"
#include "nlsob/spec_text.hpp"

using namespace nlsob;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("nlsob_cli_" + name);
  fs::remove_all(dir);
  return dir;
}

const Check* find_check(const RatioTable& t, const std::string& prefix) {
  for (const auto& c : t.checks)
    if (c.name.rfind(prefix, 0) == 0) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("config parsing") {
  const auto cfg = parse_config(R"(
; comment line
[experiment]
kind = equivalence-suite
name = demo

[grid]
a = n=2,L=3,N=16
refine = true

[functions]
first = gaussian:sigma=1
second = tent:width=2

[spaces]
mixed = mixed:r=[2;3]
lorentz = lorentz:r=2,tau=3

[domain]
ball = ball:center=[0.5;-0.25],radius=1.5

[sweep]
lambda = 0.1,1,10
gamma = 1,-1
p = 1

[policy]
spec = policy:diagonal=ball,subsample=2,radius=1

[params]
bracket = 8

[output]
dir = somewhere
plot = false
seed = 42
)");
  CHECK(cfg.kind == "equivalence-suite");
  CHECK(cfg.name == "demo");
  CHECK(cfg.grids == std::vector<std::string>{"n=2,L=3,N=16"});
  CHECK(cfg.refine);
  CHECK(cfg.functions == std::vector<std::string>{"gaussian:sigma=1", "tent:width=2"});
  // The ';' inside the bracketed vector is part of the value, not a comment.
  CHECK(cfg.spaces == std::vector<std::string>{"mixed:r=[2;3]", "lorentz:r=2,tau=3"});
  CHECK(cfg.domains == std::vector<std::string>{"ball:center=[0.5;-0.25],radius=1.5"});
  CHECK(cfg.lambdas == std::vector<double>{0.1, 1.0, 10.0});
  CHECK(cfg.gammas == std::vector<double>{1.0, -1.0});
  CHECK(cfg.ps == std::vector<double>{1.0});
  REQUIRE(cfg.policy);
  CHECK(*cfg.policy == "policy:diagonal=ball,subsample=2,radius=1");
  CHECK(cfg.param("bracket", 10.0) == 8.0);
  CHECK(cfg.param("missing", 3.5) == 3.5);
  CHECK(cfg.out_dir == "somewhere");
  CHECK(cfg.csv);
  CHECK_FALSE(cfg.plot);
  CHECK(cfg.seed == 42);

  const auto grids = config_grids(cfg);
  REQUIRE(grids.size() == 2);
  CHECK(grids[1].points() == std::vector<int>{32, 32});
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(parse_config("[experiment]\nkind = fourier\n"), SpecError);
  CHECK_THROWS_AS(parse_config("[experiment]\nkind = bbm\n[colours]\nred = 1\n"), SpecError);
  CHECK_THROWS_AS(parse_config("[experiment]\nkind = bbm\nflavour = sweet\n"), SpecError);
  CHECK_THROWS_AS(parse_config("[experiment]\nkind = bbm\n[functions]\nf = wavelet:scale=1\n"), SpecError);
  CHECK_THROWS_AS(
      parse_config("[experiment]\nkind = bbm\n[grid]\na = n=1,L=1,N=8\n[spaces]\nx = lorentz:r=0.5,tau=2\n"),
      SpecError);
  CHECK_THROWS_AS(parse_config("[experiment]\nkind = bbm\n[grid]\na = n=1,L=1,N=0\n"), SpecError);
  // Mixed norms need one exponent per axis of every configured grid.
  CHECK_THROWS_AS(parse_config("[experiment]\nkind = bbm\n[grid]\na = n=1,L=1,N=8\n[spaces]\nx = mixed:r=[2;3]\n"),
                  SpecError);
  CHECK_THROWS_AS(parse_config("[experiment]\nkind = bbm\n[sweep]\ns = 0.5,1.2\n"), SpecError);
  CHECK_THROWS_AS(parse_config("[experiment]\nkind = bsvy\n[sweep]\nlambda = 2,1\n"), SpecError);
  CHECK_THROWS_AS(parse_config("[experiment]\nkind = bsvy\n[sweep]\nlambda = 1,abc\n"), SpecError);
  CHECK_THROWS_AS(parse_config("[experiment]\nkind = bsvy\n[output]\ncsv = maybe\n"), SpecError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.ini"), std::exception);
  ExperimentConfig empty;
  empty.kind = "bbm";
  CHECK_THROWS_AS(config_grids(empty), SpecError);
}

TEST_CASE("bundled configs parse") {
  const fs::path dir = fs::path(NLSOB_SOURCE_DIR) / "configs";
  int count = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() != ".ini") continue;
    CHECK_NOTHROW(load_config(entry.path().string()));
    ++count;
  }
  CHECK(count >= 7);
}

TEST_CASE("bbm experiment") {
  ExperimentConfig cfg;
  cfg.kind = "bbm";
  cfg.grids = {"n=1,L=8,N=1024"};
  cfg.functions = {"gaussian:sigma=1", "constant:value=2"};
  cfg.ps = {1.0};
  const auto t = run_experiment(cfg);
  // Per function: one row per s plus the extrapolated row.
  const std::size_t per = default_s_grid().size() + 1;
  REQUIRE(t.rows.size() == 2 * per);
  const auto& gauss = t.rows[per - 1];
  CHECK(gauss.flags == "extrapolated");
  CHECK(gauss.ratio == doctest::Approx(1.0).epsilon(0.03));
  // Constant function: both sides vanish and the row is flagged, not dropped.
  const auto& flat = t.rows[2 * per - 1];
  CHECK(flat.value == 0.0);
  CHECK(flat.reference == 0.0);
  CHECK(std::isnan(flat.ratio));
  CHECK(flat.flags.find("degenerate") != std::string::npos);
  CHECK(t.passed());
  for (const auto& r : t.rows) CHECK(r.grid == "n=1,lo=-8,hi=8,N=1024");
}

TEST_CASE("bsvy desk experiment") {
  const auto cfg = parse_config(R"(
[experiment]
kind = bsvy
[grid]
g = n=1,lo=0,hi=1,N=1024
[functions]
f = coordinate:axis=0
g = constant:value=1
[spaces]
x = lebesgue:p=1
[sweep]
lambda = 0.5,1,2,4,8,16,32
[policy]
spec = policy:diagonal=ball,subsample=8,radius=64
[params]
expect_ratio = 2
ratio_tol = 0.025
)");
  const auto t = run_experiment(cfg);
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0].reference == doctest::Approx(1.0).epsilon(1e-12));
  // The argmax sits on the upper end of the configured grid, so the sweep is
  // extended upwards and the sup approaches 2.
  CHECK(t.rows[0].ratio >= 1.98);
  CHECK(t.rows[0].ratio <= 2.05);
  CHECK(std::isnan(t.rows[1].ratio));
  CHECK(t.rows[1].flags.find("degenerate") != std::string::npos);
  const auto& profiles = t.details.at("profiles");
  REQUIRE(profiles.size() == 2);
  CHECK(profiles[0].at("policy") == "policy:diagonal=ball,subsample=8,radius=64");
  CHECK(profiles[0].at("lambdas").size() > 7);
  CHECK(profiles[0].at("lambdas").back().get<double>() > 32.0);
  REQUIRE(t.checks.size() == 2);
  CHECK(t.checks[0].passed);
  CHECK(t.checks[1].passed);
  auto strict = cfg;
  strict.params["expect_ratio"] = "1";
  CHECK_FALSE(run_experiment(strict).passed());
}

TEST_CASE("equivalence suite with refinement") {
  const auto cfg = parse_config(R"(
[experiment]
kind = equivalence-suite
[grid]
g = n=1,L=4,N=128
refine = true
[functions]
a = gaussian:sigma=1
b = tent:width=2
[spaces]
l = lebesgue:p=2
[domain]
full = full
ball = ball:center=0,radius=2
[sweep]
gamma = 1
p = 1
[policy]
spec = policy:diagonal=ball,subsample=8,radius=100000
)");
  const auto t = run_experiment(cfg);
  CHECK(t.rows.size() == 2 * 2 * 2);
  const auto* bracket = find_check(t, "bracket lebesgue:p=2");
  REQUIRE(bracket);
  CHECK(bracket->passed);
  int refinement = 0;
  for (const auto& c : t.checks) refinement += c.name.rfind("refinement", 0) == 0;
  CHECK(refinement == 4);
  CHECK(t.passed());
  CHECK(t.details.at("brackets").size() == 1);
}

TEST_CASE("morrey duality experiment") {
  const auto cfg = parse_config(R"(
[experiment]
kind = morrey-duality
[grid]
g = n=1,L=2,N=64
[functions]
ind = indicator:lo=0,hi=1
zero = constant:value=0
[spaces]
m = morrey:r=2,alpha=4
[params]
theta = 0.75
[output]
seed = 5
)");
  const auto t = run_experiment(cfg);
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0].ratio > 0.1);
  CHECK(t.rows[0].ratio < 10.0);
  CHECK(t.rows[0].flags.empty());
  CHECK(t.rows[1].value == 0.0);
  CHECK(t.rows[1].flags.find("degenerate") != std::string::npos);
  CHECK(t.passed());

  auto bad = cfg;
  bad.params["theta"] = "0.2";  // below 1 - r/alpha = 0.5
  CHECK_THROWS_AS(run_experiment(bad), SpecError);
  bad.params.erase("theta");
  bad.spaces = {"lebesgue:p=2"};
  CHECK_THROWS_AS(run_experiment(bad), SpecError);
}

TEST_CASE("weak-holder suite") {
  auto cfg = parse_config("[experiment]\nkind = weak-holder\n[params]\ninstances = 30\n[output]\nseed = 4\n");
  const auto t = run_experiment(cfg);
  CHECK(t.rows.size() == 30);
  CHECK(t.passed());
  CHECK(t.details.at("degenerate") == 3);
  CHECK(t.details.at("margins").size() == 27);
  CHECK(t.details.at("min_margin").get<double>() >= 0.0);
  cfg.seed = 5;
  CHECK_FALSE(run_experiment(cfg) == t);
}

TEST_CASE("norms and ap-constants experiments") {
  const auto norms = run_experiment(parse_config(R"(
[experiment]
kind = norms
[grid]
g = n=1,L=1,N=200
[functions]
c = constant:value=3
[spaces]
l2 = lebesgue:p=2
lorentz = lorentz:r=2,tau=2
)"));
  REQUIRE(norms.rows.size() == 2);
  for (const auto& r : norms.rows) {
    CHECK(r.value == doctest::Approx(3.0 * std::sqrt(2.0)).epsilon(1e-10));
    CHECK(r.reference == 0.0);
  }
  CHECK(norms.passed());

  const auto ap = run_experiment(parse_config(R"(
[experiment]
kind = ap-constants
[grid]
g = n=1,L=1,N=512
[weights]
unit = power:a=0,center=0
root = power:a=-0.5,center=0
)"));
  REQUIRE(ap.rows.size() == 8);
  for (int i = 0; i < 4; ++i) CHECK(ap.rows[i].value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ap.rows[4].reference == 2.0);
  CHECK(ap.passed());
}

TEST_CASE("csv and json reports") {
  RatioTable t;
  t.experiment = "one";
  t.rows.push_back(make_row("one", "gaussian:sigma=1,center=0", "mixed:r=[2;3]", "full", 2, 1.5, -1.0, 2.5, 1.25, "",
                            "n=2,lo=-1,hi=1,N=8", 9));
  const auto csv = to_csv(t);
  std::istringstream lines(csv);
  std::string header, data, extra;
  std::getline(lines, header);
  std::getline(lines, data);
  CHECK(header == "experiment,function,space,domain,n,p,gamma_or_s,value,reference,ratio,flags,grid,seed");
  CHECK_FALSE(data.empty());
  CHECK_FALSE(std::getline(lines, extra));
  CHECK(t.rows[0].ratio == 2.0);

  t.rows.push_back(make_row("one", "constant:value=0", "lebesgue:p=2", "full", 1, 2.0, 0.5, 0.0, 0.0, "",
                            "n=1,lo=0,hi=1,N=4", 9));
  t.rows.push_back(make_row("one", "x", "y", "full", 1, 2.0, 0.5, INFINITY, 1.0, "infinite", "g", 9));
  t.checks.push_back({"a check", true, "detail, with comma"});
  t.details["nested"] = {{"k", {1, 2, 3}}};
  CHECK(t.rows[1].flags == "degenerate");
  const auto j = to_json(t);
  CHECK(table_from_json(j) == t);
  CHECK(table_from_json(nlohmann::json::parse(j.dump())) == t);
}

TEST_CASE("emit_report is byte deterministic") {
  const auto cfg = parse_config(R"(
[experiment]
kind = morrey-duality
name = det
[grid]
g = n=1,L=2,N=32
[functions]
f = gaussian:sigma=0.5
[output]
seed = 17
)");
  const auto a = scratch("a"), b = scratch("b");
  const auto fa = emit_report(run_experiment(cfg), a.string(), "det", true, true, true);
  const auto fb = emit_report(run_experiment(cfg), b.string(), "det", true, true, true);
  CHECK(slurp(fa.csv) == slurp(fb.csv));
  CHECK(slurp(fa.json) == slurp(fb.json));
  CHECK(slurp(fa.plot) == slurp(fb.plot));
  CHECK(slurp(fa.plot).find("det.csv") != std::string::npos);
  CHECK(table_from_json(nlohmann::json::parse(slurp(fa.json))) == run_experiment(cfg));

  const auto only_csv = emit_report(run_experiment(cfg), scratch("c").string(), "det", true, false, false);
  CHECK(only_csv.json.empty());
  CHECK(fs::exists(only_csv.csv));

  CHECK_THROWS_AS(emit_report(RatioTable{}, a.string(), "x", true, true, true), std::invalid_argument);
  const auto file = a / "det.csv";
  CHECK_THROWS(emit_report(run_experiment(cfg), (file / "sub").string(), "x", true, false, false));
  fs::remove_all(a);
  fs::remove_all(b);
  fs::remove_all(scratch("c"));
}
