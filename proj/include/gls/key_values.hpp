#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace gls {

/// A whitespace-separated snippet "head key=value key=value ...".
/// The head is the first token without '=' (or the value of "family=").
class KeyValues {
 public:
  static KeyValues parse(std::string_view text, std::string_view head_key = "family");

  const std::string& head() const { return head_; }
  bool has(const std::string& key) const { return values_.count(key) != 0; }
  std::optional<std::string> get(const std::string& key) const;
  /// Numeric lookup; accepts "inf" / "+inf". Throws InvalidParameter on garbage.
  double number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::string head_;
  std::map<std::string, std::string> values_;
};

double parse_number(std::string_view token);

}  // namespace gls
