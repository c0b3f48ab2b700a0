#include "nlsob/config.hpp"

#include <algorithm>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fstream>
#include <sstream>

#include "nlsob/domain.hpp"
#include "nlsob/grid.hpp"
#include "nlsob/kernels.hpp"
#include "nlsob/space_spec.hpp"
#include "nlsob/spec_text.hpp"
#include "nlsob/test_functions.hpp"
#include "nlsob/weight.hpp"

namespace nlsob {

namespace pt = boost::property_tree;

namespace {

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw SpecError("config: '" + key + "' expects true or false, got '" + v + "'");
}

std::vector<std::string> values_of(const pt::ptree& section) {
  std::vector<std::string> out;
  for (const auto& [key, node] : section) out.push_back(node.data());
  return out;
}

}  // namespace

double ExperimentConfig::param(const std::string& key, double fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : parse_number(it->second);
}

const std::vector<std::string>& experiment_kinds() {
  static const std::vector<std::string> kinds = {"bbm",           "bsvy",        "equivalence-suite",
                                                 "morrey-duality", "weak-holder", "norms",
                                                 "ap-constants"};
  return kinds;
}

std::vector<double> parse_number_list(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    const auto item = text.substr(start, end - start);
    if (item.find_first_not_of(" \t") != std::string_view::npos) out.push_back(parse_number(item));
    start = end + 1;
  }
  return out;
}

ExperimentConfig parse_config(std::string_view text) {
  pt::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& err) {
    throw SpecError(std::string("config: ") + err.what());
  }
  ExperimentConfig cfg;
  for (const auto& [section, node] : tree) {
    if (section == "experiment") {
      for (const auto& [key, v] : node) {
        if (key == "kind")
          cfg.kind = v.data();
        else if (key == "name")
          cfg.name = v.data();
        else
          throw SpecError("config: unknown key experiment." + key);
      }
    } else if (section == "grid") {
      for (const auto& [key, v] : node) {
        if (key == "refine")
          cfg.refine = parse_bool(key, v.data());
        else
          cfg.grids.push_back(v.data());
      }
    } else if (section == "functions") {
      cfg.functions = values_of(node);
    } else if (section == "spaces") {
      cfg.spaces = values_of(node);
    } else if (section == "domain") {
      cfg.domains = values_of(node);
    } else if (section == "weights") {
      cfg.weights = values_of(node);
    } else if (section == "sweep") {
      for (const auto& [key, v] : node) {
        auto list = parse_number_list(v.data());
        if (key == "s")
          cfg.s_grid = std::move(list);
        else if (key == "lambda")
          cfg.lambdas = std::move(list);
        else if (key == "gamma")
          cfg.gammas = std::move(list);
        else if (key == "p")
          cfg.ps = std::move(list);
        else
          throw SpecError("config: unknown key sweep." + key);
      }
    } else if (section == "policy") {
      for (const auto& [key, v] : node) {
        if (key != "spec") throw SpecError("config: unknown key policy." + key);
        cfg.policy = v.data();
      }
    } else if (section == "params") {
      for (const auto& [key, v] : node) cfg.params[key] = v.data();
    } else if (section == "output") {
      for (const auto& [key, v] : node) {
        if (key == "dir")
          cfg.out_dir = v.data();
        else if (key == "csv")
          cfg.csv = parse_bool(key, v.data());
        else if (key == "json")
          cfg.json = parse_bool(key, v.data());
        else if (key == "plot")
          cfg.plot = parse_bool(key, v.data());
        else if (key == "seed")
          cfg.seed = std::stoull(v.data());
        else
          throw SpecError("config: unknown key output." + key);
      }
    } else {
      throw SpecError("config: unknown section [" + section + "]");
    }
  }

  const auto& kinds = experiment_kinds();
  if (std::find(kinds.begin(), kinds.end(), cfg.kind) == kinds.end())
    throw SpecError("config: unknown experiment kind '" + cfg.kind + "'");
  std::vector<int> dims;
  for (const auto& g : cfg.grids) dims.push_back(parse_grid(g).dim());
  for (const auto& f : cfg.functions) (void)TestFunctionSpec::parse(f);
  for (const auto& s : cfg.spaces) {
    const auto spec = parse_space(s);
    for (int d : dims) validate(spec, d);
  }
  for (const auto& d : cfg.domains) (void)DomainSpec::parse(d);
  for (const auto& w : cfg.weights) (void)PowerWeight::parse(w);
  if (cfg.policy) (void)KernelPolicy::parse(*cfg.policy);
  for (double s : cfg.s_grid)
    if (!(s > 0.0 && s < 1.0)) throw SpecError("config: s values must lie in (0, 1)");
  for (std::size_t i = 0; i < cfg.lambdas.size(); ++i)
    if (!(cfg.lambdas[i] > 0.0) || (i > 0 && !(cfg.lambdas[i] > cfg.lambdas[i - 1])))
      throw SpecError("config: lambda grid must be positive and strictly increasing");
  for (double g : cfg.gammas)
    if (g == 0.0) throw SpecError("config: gamma must be nonzero");
  for (double p : cfg.ps)
    if (!(p >= 1.0)) throw SpecError("config: p must be >= 1");
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("config: cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace nlsob
