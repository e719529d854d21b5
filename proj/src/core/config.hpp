#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace fracheat {

/// Flat `key = value` settings. Lines starting with '#' are comments. Keys
/// mirror the CLI flags with dashes written as underscores; values set later
/// override earlier ones, so flags applied after load_file() win.
class Config {
 public:
  static const std::vector<std::string>& known_keys();

  /// UsageError for keys outside known_keys().
  void set(const std::string& key, const std::string& value);
  /// UsageError naming the path when it cannot be opened or a line is malformed.
  void load_file(const std::string& path);

  bool has(const std::string& key) const;
  std::string get(const std::string& key, const std::string& fallback = "") const;
  double get_double(const std::string& key, double fallback) const;
  long long get_int(const std::string& key, long long fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  /// Comma-separated numbers.
  std::vector<double> get_list(const std::string& key) const;

  const std::map<std::string, std::string>& values() const noexcept { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

std::string trim(const std::string& s);
std::vector<std::string> split(const std::string& s, char sep);
/// Strict number parsing; UsageError mentioning `what` on failure.
double parse_double(const std::string& s, const std::string& what);

}  // namespace fracheat
