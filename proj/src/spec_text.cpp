#include "nlsob/spec_text.hpp"

#include <charconv>
#include <cmath>
#include <limits>

namespace nlsob {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

double parse_number(std::string_view text) {
  text = trim(text);
  if (text == "inf" || text == "+inf" || text == "infinity") {
    return std::numeric_limits<double>::infinity();
  }
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw SpecError("not a number: '" + std::string(text) + "'");
  }
  return value;
}

std::string format_number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  return std::string(buf, ptr);
}

std::string format_vector(const std::vector<double>& values) {
  if (values.size() == 1) return format_number(values[0]);
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ';';
    out += format_number(values[i]);
  }
  return out + "]";
}

SpecText SpecText::parse(std::string_view text) {
  SpecText spec;
  text = trim(text);
  const auto colon = text.find(':');
  spec.tag_ = std::string(trim(text.substr(0, colon)));
  if (spec.tag_.empty()) throw SpecError("empty spec tag");
  if (colon == std::string_view::npos) return spec;

  std::string_view rest = text.substr(colon + 1);
  while (!rest.empty()) {
    // Commas inside [...] belong to the value.
    std::size_t end = 0;
    int depth = 0;
    for (; end < rest.size(); ++end) {
      if (rest[end] == '[') ++depth;
      if (rest[end] == ']') --depth;
      if (rest[end] == ',' && depth == 0) break;
    }
    std::string_view item = trim(rest.substr(0, end));
    rest = end < rest.size() ? rest.substr(end + 1) : std::string_view{};
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw SpecError("expected key=value in '" + std::string(item) + "'");
    }
    spec.pairs_.emplace_back(std::string(trim(item.substr(0, eq))),
                             std::string(trim(item.substr(eq + 1))));
  }
  spec.used_.assign(spec.pairs_.size(), false);
  return spec;
}

const std::string* SpecText::find(std::string_view key) const {
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    if (pairs_[i].first == key) {
      used_[i] = true;
      return &pairs_[i].second;
    }
  }
  return nullptr;
}

bool SpecText::has(std::string_view key) const {
  for (const auto& [k, v] : pairs_) {
    if (k == key) return true;
  }
  return false;
}

double SpecText::number(std::string_view key) const {
  const auto* v = find(key);
  if (!v) throw SpecError(tag_ + ": missing key '" + std::string(key) + "'");
  return parse_number(*v);
}

double SpecText::number_or(std::string_view key, double fallback) const {
  const auto* v = find(key);
  return v ? parse_number(*v) : fallback;
}

int SpecText::integer(std::string_view key) const {
  const double v = number(key);
  if (v != std::floor(v)) throw SpecError(tag_ + ": '" + std::string(key) + "' must be an integer");
  return static_cast<int>(v);
}

int SpecText::integer_or(std::string_view key, int fallback) const {
  return has(key) ? integer(key) : fallback;
}

std::vector<double> SpecText::vector_or(std::string_view key, std::vector<double> fallback) const {
  const auto* v = find(key);
  if (!v) return fallback;
  std::string_view s = trim(*v);
  if (s.empty() || s.front() != '[') return {parse_number(s)};
  if (s.back() != ']') throw SpecError("unterminated vector '" + std::string(s) + "'");
  s = s.substr(1, s.size() - 2);
  std::vector<double> out;
  while (!s.empty()) {
    const auto semi = s.find(';');
    out.push_back(parse_number(s.substr(0, semi)));
    if (semi == std::string_view::npos) break;
    s = s.substr(semi + 1);
  }
  return out;
}

std::string SpecText::text_or(std::string_view key, std::string fallback) const {
  const auto* v = find(key);
  return v ? *v : fallback;
}

void SpecText::expect_consumed() const {
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    if (!used_[i]) throw SpecError(tag_ + ": unknown key '" + pairs_[i].first + "'");
  }
}

}  // namespace nlsob
