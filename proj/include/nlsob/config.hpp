#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nlsob {

/// Sectioned key-value experiment description:
///
///   [experiment]  kind = bsvy, name = desk
///   [grid]        any key = grid spec; refine = true adds the 2N grid
///   [functions]   any key = test-function spec
///   [spaces]      any key = space spec
///   [domain]      any key = domain spec
///   [weights]     any key = weight spec
///   [sweep]       s, lambda, gamma, p = comma-separated numbers
///   [policy]      spec = policy:...
///   [params]      experiment-specific numbers (tolerance, theta, ...)
///   [output]      dir, csv, json, plot, seed
///
/// Entries keep their file order.
struct ExperimentConfig {
  std::string kind;
  std::string name;
  std::vector<std::string> grids;
  bool refine = false;
  std::vector<std::string> functions;
  std::vector<std::string> spaces;
  std::vector<std::string> domains;
  std::vector<std::string> weights;
  std::vector<double> s_grid;
  std::vector<double> lambdas;
  std::vector<double> gammas;
  std::vector<double> ps;
  std::optional<std::string> policy;
  std::map<std::string, std::string> params;
  std::string out_dir = "out";
  bool csv = true;
  bool json = true;
  bool plot = true;
  std::uint64_t seed = 1;

  double param(const std::string& key, double fallback) const;
};

/// Known experiment kinds.
const std::vector<std::string>& experiment_kinds();

/// Throws SpecError on unknown sections, kinds or unparsable specs.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

std::vector<double> parse_number_list(std::string_view text);

}  // namespace nlsob
