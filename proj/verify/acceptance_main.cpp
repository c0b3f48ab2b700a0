#include <CLI11.hpp>
#include <iostream>

#include "nlsob_verify/acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Runs the acceptance criteria and prints one line per criterion"};
  std::vector<int> ids;
  std::uint64_t seed = 7;
  app.add_option("--only", ids, "criterion numbers to run (default: all)");
  app.add_option("--seed", seed, "random seed for the randomized criteria");
  CLI11_PARSE(app, argc, argv);
  const bool ok = nlsob::acceptance::run(ids, seed, [](const std::string& line) { std::cout << line << std::endl; });
  return ok ? 0 : 1;
}
