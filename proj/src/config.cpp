#include "nlch/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace nlch {

namespace {

enum class Type { integer, real, text, boolean, real_or_auto, real_list, choice };

struct KeySpec {
  const char* key;
  Type type;
  const char* fallback;
  std::vector<std::string> choices = {};
};

// Echo order. ny and ly default to nx and lx.
const std::vector<KeySpec>& schema() {
  static const std::vector<KeySpec> s = {
      {"dim", Type::integer, "2"},
      {"nx", Type::integer, "64"},
      {"ny", Type::integer, ""},
      {"lx", Type::real, "16"},
      {"ly", Type::real, ""},
      {"bc", Type::choice, "periodic", {"periodic", "neumann"}},
      {"model", Type::choice, "cho", {"cho", "chbeg"}},
      {"sigma", Type::real, "1"},
      {"mbar", Type::real, "0"},
      {"lambda0", Type::real, "1000"},
      {"image", Type::text, ""},
      {"mask", Type::text, ""},
      {"threshold", Type::real, "0.5"},
      {"kernel", Type::choice, "gaussian", {"gaussian", "mollifier", "zero"}},
      {"eps", Type::real, "0.5"},
      {"amplitude", Type::real, "1.25"},
      {"potential", Type::choice, "quartic", {"quartic", "shifted-quartic"}},
      {"well_lo", Type::real, "-1"},
      {"well_hi", Type::real, "1"},
      {"potential_scale", Type::real, "1"},
      {"velocity", Type::choice, "zero", {"zero", "shear", "taylor_green"}},
      {"velocity_magnitude", Type::real, "1"},
      {"source", Type::choice, "zero", {"zero", "constant"}},
      {"source_value", Type::real, "0"},
      {"dt", Type::real, "0.01"},
      {"t_end", Type::real, "1"},
      {"stabilization_s", Type::real_or_auto, "auto"},
      {"steady_tol", Type::real, "1e-06"},
      {"max_steps", Type::integer, "1000000"},
      {"seed", Type::integer, "1"},
      {"field_guard", Type::real, "1.5"},
      {"strict_cfl", Type::boolean, "false"},
      {"init", Type::choice, "spinodal", {"spinodal", "constant", "file"}},
      {"init_amplitude", Type::real, "0.05"},
      {"init_mean", Type::real, "0"},
      {"init_file", Type::text, ""},
      {"inpaint_noise", Type::real, "0"},
      {"out_dir", Type::text, "out"},
      {"cadence", Type::integer, "1"},
      {"snapshot_every", Type::integer, "0"},
      {"probe_amplitudes", Type::real_list, "0.1,1,5"},
      {"check_smin", Type::real, "-3"},
      {"check_smax", Type::real, "3"},
      {"check_samples", Type::integer, "2001"},
      {"check_q", Type::real, "1"},
  };
  return s;
}

const KeySpec* find_key(std::string_view key) {
  for (const auto& k : schema()) {
    if (key == k.key) return &k;
  }
  return nullptr;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string where(int line) { return line > 0 ? "line " + std::to_string(line) + ": " : ""; }

std::optional<double> to_real(std::string_view s) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<long> to_int(std::string_view s) {
  long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

// Shortest spelling that parses back to the same double.
std::string format_real(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

// Validates value for the key and returns its normalised spelling.
std::string normalise(const KeySpec& spec, const std::string& value, int line) {
  auto fail = [&](const std::string& expected) -> std::string {
    throw ConfigError(where(line) + "key '" + spec.key + "': expected " + expected + ", got '" + value + "'");
  };
  switch (spec.type) {
    case Type::integer: {
      auto v = to_int(value);
      if (!v) return fail("an integer");
      return std::to_string(*v);
    }
    case Type::real: {
      auto v = to_real(value);
      if (!v) return fail("a number");
      return format_real(*v);
    }
    case Type::real_or_auto: {
      if (value == "auto") return value;
      auto v = to_real(value);
      if (!v) return fail("'auto' or a number");
      return format_real(*v);
    }
    case Type::boolean:
      if (value == "true" || value == "1" || value == "yes") return "true";
      if (value == "false" || value == "0" || value == "no") return "false";
      return fail("true or false");
    case Type::real_list: {
      std::string out;
      std::stringstream ss(value);
      std::string item;
      while (std::getline(ss, item, ',')) {
        auto v = to_real(trim(item));
        if (!v) return fail("a comma-separated list of numbers");
        if (!out.empty()) out += ',';
        out += format_real(*v);
      }
      if (out.empty()) return fail("a comma-separated list of numbers");
      return out;
    }
    case Type::choice: {
      for (const auto& c : spec.choices) {
        if (value == c) return value;
      }
      std::string opts;
      for (const auto& c : spec.choices) opts += (opts.empty() ? "" : "|") + c;
      return fail("one of " + opts);
    }
    case Type::text:
      return value;
  }
  return value;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> config_defaults() {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& k : schema()) out.emplace_back(k.key, k.fallback);
  return out;
}

Config parse_config(std::string_view text) {
  Config cfg;
  std::map<std::string, int> seen;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(std::string_view(raw).substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError(where(line) + "expected 'key = value', got '" + body + "'");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key.empty()) throw ConfigError(where(line) + "missing key before '='");
    const KeySpec* spec = find_key(key);
    if (!spec) throw ConfigError(where(line) + "unknown key '" + key + "'");
    if (auto it = seen.find(key); it != seen.end()) {
      throw ConfigError(where(line) + "duplicate key '" + key + "' (first set on line " + std::to_string(it->second) +
                        ", again on line " + std::to_string(line) + ")");
    }
    seen[key] = line;
    cfg.values_[key] = normalise(*spec, value, line);
    cfg.explicit_.insert(key);
  }
  for (const auto& k : schema()) {
    if (cfg.values_.contains(k.key)) continue;
    cfg.values_[k.key] = *k.fallback ? normalise(k, k.fallback, 0) : std::string();
  }
  if (!cfg.explicit_.contains("ny")) cfg.values_["ny"] = cfg.values_["nx"];
  if (!cfg.explicit_.contains("ly")) cfg.values_["ly"] = cfg.values_["lx"];
  return cfg;
}

void Config::set(const std::string& key, const std::string& value) {
  const KeySpec* spec = find_key(key);
  if (!spec) throw ConfigError("unknown key '" + key + "'");
  values_[key] = normalise(*spec, value, 0);
  explicit_.insert(key);
}

namespace {

const std::string& lookup(const std::map<std::string, std::string>& m, const std::string& key) {
  auto it = m.find(key);
  if (it == m.end()) throw ConfigError("unknown key '" + key + "'");
  return it->second;
}

}  // namespace

long Config::get_int(const std::string& key) const {
  auto v = to_int(lookup(values_, key));
  if (!v) throw ConfigError("key '" + key + "' is not an integer");
  return *v;
}

double Config::get_real(const std::string& key) const {
  auto v = to_real(lookup(values_, key));
  if (!v) throw ConfigError("key '" + key + "' is not a number");
  return *v;
}

const std::string& Config::get_string(const std::string& key) const { return lookup(values_, key); }

bool Config::get_bool(const std::string& key) const { return lookup(values_, key) == "true"; }

std::optional<double> Config::get_real_or_auto(const std::string& key) const {
  const auto& s = lookup(values_, key);
  if (s == "auto") return std::nullopt;
  return get_real(key);
}

std::vector<double> Config::get_real_list(const std::string& key) const {
  std::vector<double> out;
  std::stringstream ss(lookup(values_, key));
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(*to_real(item));
  return out;
}

void Config::require(const std::vector<std::string>& keys, std::string_view command) const {
  for (const auto& k : keys) {
    if (!explicit_.contains(k) || values_.at(k).empty()) {
      throw ConfigError(std::string(command) + ": missing required key '" + k + "'");
    }
  }
}

std::string Config::echo() const {
  std::string out;
  for (const auto& k : schema()) {
    const auto& v = values_.at(k.key);
    out += std::string(k.key) + " = " + v + "\n";
  }
  return out;
}

}  // namespace nlch
