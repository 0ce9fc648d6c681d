#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nlch {

/// Any config problem. The message names the key and, when known, the line.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat key = value configuration with every known key resolved to its
/// normalised effective value (defaults applied).
class Config {
 public:
  long get_int(const std::string& key) const;
  double get_real(const std::string& key) const;
  const std::string& get_string(const std::string& key) const;
  bool get_bool(const std::string& key) const;
  /// "auto" maps to nullopt.
  std::optional<double> get_real_or_auto(const std::string& key) const;
  std::vector<double> get_real_list(const std::string& key) const;

  /// Keys given explicitly in the source text.
  bool is_explicit(const std::string& key) const { return explicit_.contains(key); }
  /// Throws ConfigError naming the first missing key.
  void require(const std::vector<std::string>& keys, std::string_view command) const;

  /// Overrides one key with validation, as if it were given in the text.
  void set(const std::string& key, const std::string& value);

  /// `key = value` lines for every key in a fixed order. Parsing the echo
  /// yields an equal Config.
  std::string echo() const;

  bool operator==(const Config& other) const { return values_ == other.values_; }

 private:
  friend Config parse_config(std::string_view text);
  std::map<std::string, std::string> values_;
  std::set<std::string> explicit_;
};

Config parse_config(std::string_view text);

/// Documented keys and their defaults, in echo order.
std::vector<std::pair<std::string, std::string>> config_defaults();

}  // namespace nlch
