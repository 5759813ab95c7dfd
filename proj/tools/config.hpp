#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

// Flat INI-style scenario config: [section] headers, key = value lines,
// '#' comments. Parsing is strict: unknown sections or keys are fatal and
// reported together.
namespace vliftcli {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Config {
 public:
  static Config parse_file(const std::string& path);

  bool has(const std::string& section, const std::string& key) const;
  std::string get_string(const std::string& section, const std::string& key) const;
  double get_double(const std::string& section, const std::string& key) const;
  double get_double_or(const std::string& section, const std::string& key,
                       double fallback) const;
  int get_int(const std::string& section, const std::string& key) const;
  int get_int_or(const std::string& section, const std::string& key,
                 int fallback) const;
  bool get_bool_or(const std::string& section, const std::string& key,
                   bool fallback) const;
  std::vector<double> get_doubles(const std::string& section,
                                  const std::string& key, size_t count) const;

  // Validates every present (section, key) against the known schema; throws
  // ConfigError listing all offenders.
  void check_known_keys() const;

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

}  // namespace vliftcli
