#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace nlsob::acceptance {

struct Outcome {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct Criterion {
  int id;
  std::string title;
  std::function<Outcome()> run;
};

/// The thirteen acceptance criteria in order.
std::vector<Criterion> criteria(std::uint64_t seed = 7);

/// `A<id> PASS|FAIL <title>: <detail> (<seconds> s)`
std::string format(const Outcome& o);

/// Runs the selected criteria (all when `ids` is empty), printing one line
/// per criterion through `print`. Returns true iff all passed.
bool run(const std::vector<int>& ids, std::uint64_t seed, const std::function<void(const std::string&)>& print,
         std::vector<Outcome>* outcomes = nullptr);

}  // namespace nlsob::acceptance
