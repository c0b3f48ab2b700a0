#pragma once

// Canonical `tag:key=value,key=value` strings shared by every spec type.
// Vector values are written `[a;b;c]`; a bare scalar broadcasts.

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nlsob {

struct SpecError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class SpecText {
 public:
  static SpecText parse(std::string_view text);

  const std::string& tag() const { return tag_; }
  bool has(std::string_view key) const;
  double number(std::string_view key) const;
  double number_or(std::string_view key, double fallback) const;
  int integer(std::string_view key) const;
  int integer_or(std::string_view key, int fallback) const;
  std::vector<double> vector_or(std::string_view key, std::vector<double> fallback) const;
  std::string text_or(std::string_view key, std::string fallback) const;
  /// Throws if any key was never read; catches typos like `sigam=1`.
  void expect_consumed() const;

 private:
  const std::string* find(std::string_view key) const;

  std::string tag_;
  std::vector<std::pair<std::string, std::string>> pairs_;
  mutable std::vector<bool> used_;
};

/// Shortest round-trip decimal for a double ("inf" for infinity).
std::string format_number(double value);
std::string format_vector(const std::vector<double>& values);

double parse_number(std::string_view text);

}  // namespace nlsob
