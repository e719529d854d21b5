#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <system_error>

#include "error.hpp"

namespace fracheat {

const std::vector<std::string>& Config::known_keys() {
  static const std::vector<std::string> keys{
      "beta",        "subordinator", "kernel",        "scale",        "volume",       "flavor",
      "t",           "z",            "t_min",         "t_max",        "t_points",     "z_min",
      "z_max",       "z_points",     "z_axis",        "method",       "n",            "seed",
      "out",         "rel_tol",      "what",          "x_min",        "x_max",        "x_points",
      "f_center",    "f_variance",   "g_center",      "g_variance",   "residual_tol", "spread_max",
      "off_spread_max", "log_ratio_min", "log_ratio_max", "path_fraction", "t0"};
  return keys;
}

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  const std::string t = trim(s);
  double v = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size()) {
    throw UsageError("invalid number for " + what + ": '" + s + "'");
  }
  return v;
}

void Config::set(const std::string& key, const std::string& value) {
  std::string k = trim(key);
  std::replace(k.begin(), k.end(), '-', '_');
  const auto& keys = known_keys();
  if (std::find(keys.begin(), keys.end(), k) == keys.end()) throw UsageError("unknown setting '" + key + "'");
  values_[k] = trim(value);
}

void Config::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    const std::size_t eq = s.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    std::string value = trim(s.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    set(s.substr(0, eq), value);
  }
}

bool Config::has(const std::string& key) const { return values_.count(key) != 0; }

std::string Config::get(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : parse_double(it->second, key);
}

long long Config::get_int(const std::string& key, long long fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const double v = parse_double(it->second, key);
  if (v != static_cast<double>(static_cast<long long>(v))) throw UsageError(key + " must be an integer");
  return static_cast<long long>(v);
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const std::string& s = it->second;
  std::uint64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw UsageError(key + " must be a non-negative integer");
  }
  return v;
}

std::vector<double> Config::get_list(const std::string& key) const {
  std::vector<double> out;
  const auto it = values_.find(key);
  if (it == values_.end() || it->second.empty()) return out;
  for (const auto& part : split(it->second, ',')) out.push_back(parse_double(part, key));
  return out;
}

}  // namespace fracheat
