#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nlsob/config.hpp"
#include "nlsob/domain.hpp"
#include "nlsob/experiments.hpp"
#include "nlsob/maximal.hpp"
#include "nlsob/norms.hpp"
#include "nlsob/report.hpp"
#include "nlsob/space_spec.hpp"
#include "nlsob/spec_text.hpp"
#include "nlsob/test_functions.hpp"
#include "nlsob_verify/acceptance.hpp"

using namespace nlsob;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Flags shared by the experiment subcommands. Command-line values replace
/// the corresponding config entries.
struct Options {
  std::string config;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> grids, spaces, functions, domains, weights, params;
  std::string s, lambda, gamma, p;
  std::string policy;
  bool refine = false;
  bool no_report = false;
  bool quiet = false;
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--config", o.config, "experiment config file")->check(CLI::ExistingFile);
  sub->add_option("--out", o.out, "output directory for CSV, JSON and plot files");
  sub->add_option("--seed", o.seed, "random seed");
  sub->add_option("--grid", o.grids, "grid spec n=..,L=..,N=.. (repeatable)");
  sub->add_option("--space", o.spaces, "space spec, e.g. lorentz:r=2,tau=3 (repeatable)");
  sub->add_option("--fn", o.functions, "test function spec, e.g. gaussian:sigma=1 (repeatable)");
  sub->add_option("--domain", o.domains, "domain spec, e.g. ball:center=0,radius=1 (repeatable)");
  sub->add_option("--weight", o.weights, "power weight spec, e.g. power:a=-0.5 (repeatable)");
  sub->add_option("--s", o.s, "comma-separated s grid");
  sub->add_option("--lambda", o.lambda, "comma-separated increasing lambda grid");
  sub->add_option("--gamma", o.gamma, "comma-separated gamma values");
  sub->add_option("--p", o.p, "comma-separated p values");
  sub->add_option("--policy", o.policy, "kernel policy spec");
  sub->add_option("--param", o.params, "experiment parameter key=value (repeatable)");
  sub->add_flag("--refine", o.refine, "also run every grid at twice the resolution");
  sub->add_flag("--no-report", o.no_report, "do not write report files");
  sub->add_flag("--quiet", o.quiet, "print checks only");
}

ExperimentConfig build_config(const Options& o, const std::string& kind, const std::vector<std::string>& accepted) {
  ExperimentConfig cfg;
  if (!o.config.empty()) {
    cfg = load_config(o.config);
    if (!accepted.empty() && std::find(accepted.begin(), accepted.end(), cfg.kind) == accepted.end())
      throw SpecError("config kind '" + cfg.kind + "' does not match this subcommand");
  } else {
    cfg.kind = kind;
  }
  if (!o.grids.empty()) cfg.grids = o.grids;
  if (!o.spaces.empty()) cfg.spaces = o.spaces;
  if (!o.functions.empty()) cfg.functions = o.functions;
  if (!o.domains.empty()) cfg.domains = o.domains;
  if (!o.weights.empty()) cfg.weights = o.weights;
  if (!o.s.empty()) cfg.s_grid = parse_number_list(o.s);
  if (!o.lambda.empty()) cfg.lambdas = parse_number_list(o.lambda);
  if (!o.gamma.empty()) cfg.gammas = parse_number_list(o.gamma);
  if (!o.p.empty()) cfg.ps = parse_number_list(o.p);
  if (!o.policy.empty()) cfg.policy = o.policy;
  for (const auto& kv : o.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw SpecError("--param expects key=value, got '" + kv + "'");
    cfg.params[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  if (o.refine) cfg.refine = true;
  if (o.out) cfg.out_dir = *o.out;
  if (o.seed) cfg.seed = *o.seed;
  if (o.no_report) cfg.csv = cfg.json = cfg.plot = false;
  if (cfg.name.empty()) cfg.name = cfg.kind;
  if (cfg.grids.empty()) cfg.grids = {"n=1,L=4,N=256"};

  // Rerun the config validation on the merged result.
  const std::string text = "[experiment]\nkind = norms\n";
  for (const auto& g : cfg.grids) (void)parse_grid(g);
  for (const auto& f : cfg.functions) (void)TestFunctionSpec::parse(f);
  for (const auto& s : cfg.spaces) (void)parse_space(s);
  for (const auto& d : cfg.domains) (void)DomainSpec::parse(d);
  std::string sweep = "[sweep]\n";
  auto list = [](const std::vector<double>& v) {
    std::string out;
    for (double x : v) out += (out.empty() ? "" : ",") + format_number(x);
    return out;
  };
  if (!cfg.s_grid.empty()) sweep += "s = " + list(cfg.s_grid) + "\n";
  if (!cfg.lambdas.empty()) sweep += "lambda = " + list(cfg.lambdas) + "\n";
  if (!cfg.gammas.empty()) sweep += "gamma = " + list(cfg.gammas) + "\n";
  if (!cfg.ps.empty()) sweep += "p = " + list(cfg.ps) + "\n";
  if (cfg.policy) sweep += "[policy]\nspec = " + *cfg.policy + "\n";
  (void)parse_config(text + sweep);
  return cfg;
}

std::string fmt(double v) {
  if (std::isnan(v)) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

/// Prints rows and checks, writes the requested files and returns the exit code.
int finish(const RatioTable& table, const ExperimentConfig& cfg, bool quiet) {
  if (!quiet) {
    for (const auto& r : table.rows) {
      std::cout << r.function << "  " << r.space << "  " << r.domain << "  n=" << r.n << " p=" << fmt(r.p)
                << " g/s=" << fmt(r.gamma_or_s) << "  value=" << fmt(r.value) << " reference=" << fmt(r.reference)
                << " ratio=" << fmt(r.ratio);
      if (!r.flags.empty()) std::cout << "  [" << r.flags << "]";
      std::cout << "\n";
    }
  }
  for (const auto& c : table.checks)
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
  if ((cfg.csv || cfg.json || cfg.plot) && !table.rows.empty()) {
    const auto files = emit_report(table, cfg.out_dir, cfg.name, cfg.csv, cfg.json, cfg.plot);
    for (const auto* f : {&files.csv, &files.json, &files.plot})
      if (!f->empty()) std::cout << "wrote " << *f << "\n";
  }
  const bool ok = table.passed();
  std::cout << (ok ? "all checks passed" : "some checks failed") << " (" << table.checks.size() << " checks)\n";
  return ok ? 0 : 1;
}

/// M|f| against |f| per function and space: rows hold the two norms, and the
/// cell-wise domination M|f| >= |f| is checked.
RatioTable run_maximal(const ExperimentConfig& cfg) {
  RatioTable table;
  table.experiment = cfg.name;
  const auto functions = cfg.functions.empty() ? std::vector<std::string>{"gaussian:sigma=1"} : cfg.functions;
  const auto spaces = cfg.spaces.empty() ? std::vector<std::string>{"lebesgue:p=2"} : cfg.spaces;
  for (const auto& grid : config_grids(cfg)) {
    const auto radii = maximal_radii(grid);
    for (const auto& ftext : functions) {
      const auto fn = TestFunctionSpec::parse(ftext);
      auto values = sample(fn, grid).values;
      for (auto& v : values) v = std::abs(v);
      const auto m = hl_maximal_values(grid, values, radii);
      std::size_t below = 0;
      double ratio_max = 0.0;
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] < values[i]) ++below;
        if (values[i] > 0.0) ratio_max = std::max(ratio_max, m[i] / values[i]);
      }
      for (const auto& stext : spaces) {
        const auto X = parse_space(stext);
        table.rows.push_back(make_row(table.experiment, fn.to_string(), to_string(X), "full", grid.dim(), kNaN, kNaN,
                                      norm_values(grid, m, X), norm_values(grid, values, X), "", grid.describe(),
                                      cfg.seed));
      }
      table.details["max_pointwise_ratio"][fn.to_string() + " " + grid.describe()] = ratio_max;
      table.checks.push_back({"maximal-dominates " + fn.to_string() + " " + grid.describe(), below == 0,
                              std::to_string(below) + " cells with M|f| < |f|"});
    }
  }
  return table;
}

/// Monte Carlo (eps, inf) search per domain and eps. Convex domains are
/// expected to survive; other domains are reported unless --expect is given.
RatioTable run_epsilon_check(const ExperimentConfig& cfg, const std::string& eps_text, std::size_t samples,
                             const std::string& expect) {
  RatioTable table;
  table.experiment = cfg.name;
  const auto eps_list = parse_number_list(eps_text);
  const auto domains = cfg.domains.empty() ? std::vector<std::string>{"slit:axis=0,offset=0,from=0"} : cfg.domains;
  nlohmann::json certs = nlohmann::json::array();
  for (const auto& grid : config_grids(cfg)) {
    for (const auto& dtext : domains) {
      const auto d = DomainSpec::parse(dtext);
      for (double eps : eps_list) {
        FalsifierOptions opts;
        opts.samples = samples;
        opts.seed = cfg.seed;
        const auto cert = epsilon_falsifier(d, grid.lo(), grid.hi(), eps, opts);
        const bool refuted = cert.verdict == Verdict::refuted;
        const std::string verdict = refuted ? "refuted" : "not-refuted";
        table.rows.push_back(make_row(table.experiment, "", "", d.to_string(), grid.dim(), kNaN, eps,
                                      refuted ? cert.witness_ratio : 0.0, kNaN, verdict, grid.describe(), cfg.seed));
        certs.push_back({{"domain", d.to_string()},
                         {"eps", eps},
                         {"verdict", verdict},
                         {"witness_x", cert.witness_x},
                         {"witness_y", cert.witness_y},
                         {"failed_condition", cert.failed_condition},
                         {"witness_ratio", cert.witness_ratio},
                         {"samples", cert.samples},
                         {"certified_violations", cert.certified_violations},
                         {"unresolved", cert.unresolved}});
        std::string want = expect;
        if (want == "auto") want = d.is_convex() ? "not-refuted" : "";
        if (!want.empty())
          table.checks.push_back({"epsilon " + d.to_string() + " eps=" + format_number(eps), verdict == want,
                                  verdict + ", expected " + want + ", " + std::to_string(cert.certified_violations) +
                                      " certified violations"});
      }
    }
  }
  table.details["certificates"] = certs;
  return table;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Norms, nonlocal Sobolev functionals and their equivalence experiments on sampled functions"};
  app.require_subcommand(1);

  struct Experiment {
    const char* name;
    const char* kind;
    std::vector<std::string> accepted;
    const char* help;
  };
  const std::vector<Experiment> experiments{
      {"norm", "norms", {"norms"}, "norms of test functions and of their gradients"},
      {"bbm", "bbm", {"bbm"}, "s-sweep of the scaled Gagliardo seminorm and its limit as s -> 1"},
      {"bsvy", "bsvy", {"bsvy", "equivalence-suite"}, "lambda-sweep of the level-set functional against the gradient norm"},
      {"apconst", "ap-constants", {"ap-constants"}, "A_p constants of power weights"},
      {"morrey-duality", "morrey-duality", {"morrey-duality"}, "Morrey norm against weighted Lebesgue norms"},
      {"weak-holder", "weak-holder", {"weak-holder"}, "random instances of the weak Hoelder inequality"},
      {"maximal", "maximal", {}, "Hardy-Littlewood maximal function of test functions"},
      {"epsilon-check", "epsilon-check", {}, "Monte Carlo refutation search for (eps, inf)-domains"},
  };
  std::map<std::string, Options> options;
  std::map<std::string, CLI::App*> subs;
  std::string eps_text = "0.1,0.5,1";
  std::size_t samples = 10000;
  std::string expect = "auto";
  for (const auto& e : experiments) {
    auto* sub = app.add_subcommand(e.name, e.help);
    add_common(sub, options[e.name]);
    subs[e.name] = sub;
  }
  subs["epsilon-check"]->add_option("--eps", eps_text, "comma-separated eps values in (0, 1]");
  subs["epsilon-check"]->add_option("--samples", samples, "sampled point pairs per eps");
  subs["epsilon-check"]
      ->add_option("--expect", expect, "required verdict: refuted, not-refuted, none, or auto (convex domains survive)")
      ->check(CLI::IsMember({"refuted", "not-refuted", "none", "auto"}));

  auto* verify = app.add_subcommand("verify", "run the acceptance criteria, one line each");
  std::vector<int> only;
  std::uint64_t verify_seed = 7;
  verify->add_option("--only", only, "criterion numbers to run (default: all)");
  verify->add_option("--seed", verify_seed, "random seed for the randomized criteria");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) {
      const bool ok = acceptance::run(only, verify_seed, [](const std::string& line) { std::cout << line << std::endl; });
      return ok ? 0 : 1;
    }
    for (const auto& e : experiments) {
      if (!subs[e.name]->parsed()) continue;
      const auto& o = options[e.name];
      auto cfg = build_config(o, e.kind, e.accepted);
      if (std::string(e.name) == "maximal") {
        cfg.name = o.config.empty() ? "maximal" : cfg.name;
        return finish(run_maximal(cfg), cfg, o.quiet);
      }
      if (std::string(e.name) == "epsilon-check") {
        if (o.config.empty() && o.grids.empty()) cfg.grids = {"n=2,L=1,N=64"};
        cfg.name = o.config.empty() ? "epsilon-check" : cfg.name;
        return finish(run_epsilon_check(cfg, eps_text, samples, expect == "none" ? "" : expect), cfg, o.quiet);
      }
      return finish(run_experiment(cfg), cfg, o.quiet);
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  return 2;
}
