#include "config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace vliftcli {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// (section, key) pairs accepted anywhere; subcommands check for what they
// need, everything else is a typo and fatal.
const std::set<std::pair<std::string, std::string>>& known_keys() {
  static const std::set<std::pair<std::string, std::string>> keys = {
      {"trap", "omega_tilde"},
      {"trap", "omega_sq_int"},
      {"trap", "norm"},
      {"state", "kind"},
      {"state", "a_disp"},
      {"state", "d"},
      {"state", "l"},
      {"state", "n_atoms"},
      {"state", "widths"},
      {"state", "file"},
      {"grid", "n"},
      {"grid", "box"},
      {"grid", "box_widths"},
      {"run", "t_final"},
      {"run", "dt"},
      {"run", "samples"},
      {"run", "plane_axis"},
      {"run", "plane_offset"},
      {"run", "window"},
      {"run", "plane_n"},
      {"run", "dump_grids"},
      {"run", "trace_floor"},
      {"gp", "n_atoms"},
      {"gp", "a_scatt"},
      {"gp", "l"},
      {"gp", "d"},
      {"gp", "mass"},
      {"gp", "hbar"},
      {"gp", "trap_period"},
      {"gp", "trap_omega"},
      {"gp", "ratio_threshold"},
      {"gp", "timescale_factor"},
  };
  return keys;
}

}  // namespace

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path);
  Config cfg;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError(path + ":" + std::to_string(lineno) +
                          ": malformed section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) {
        throw ConfigError(path + ":" + std::to_string(lineno) +
                          ": empty section name");
      }
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos || section.empty()) {
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected 'key = value' inside a section");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key");
    }
    if (cfg.sections_[section].count(key)) {
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": duplicate key '" + key + "'");
    }
    cfg.sections_[section][key] = value;
  }
  return cfg;
}

bool Config::has(const std::string& section, const std::string& key) const {
  auto it = sections_.find(section);
  return it != sections_.end() && it->second.count(key) > 0;
}

std::string Config::get_string(const std::string& section,
                               const std::string& key) const {
  auto it = sections_.find(section);
  if (it == sections_.end() || !it->second.count(key)) {
    throw ConfigError("missing required config key [" + section + "] " + key);
  }
  return it->second.at(key);
}

double Config::get_double(const std::string& section,
                          const std::string& key) const {
  std::string v = get_string(section, key);
  try {
    size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("key [" + section + "] " + key + " is not a number: '" +
                      v + "'");
  }
}

double Config::get_double_or(const std::string& section, const std::string& key,
                             double fallback) const {
  return has(section, key) ? get_double(section, key) : fallback;
}

int Config::get_int(const std::string& section, const std::string& key) const {
  double d = get_double(section, key);
  int i = static_cast<int>(d);
  if (static_cast<double>(i) != d) {
    throw ConfigError("key [" + section + "] " + key + " must be an integer");
  }
  return i;
}

int Config::get_int_or(const std::string& section, const std::string& key,
                       int fallback) const {
  return has(section, key) ? get_int(section, key) : fallback;
}

bool Config::get_bool_or(const std::string& section, const std::string& key,
                         bool fallback) const {
  if (!has(section, key)) return fallback;
  std::string v = get_string(section, key);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("key [" + section + "] " + key + " must be a boolean");
}

std::vector<double> Config::get_doubles(const std::string& section,
                                        const std::string& key,
                                        size_t count) const {
  std::istringstream in(get_string(section, key));
  std::vector<double> out;
  double v;
  while (in >> v) out.push_back(v);
  if (out.size() != count) {
    throw ConfigError("key [" + section + "] " + key + " needs " +
                      std::to_string(count) + " numbers");
  }
  return out;
}

void Config::check_known_keys() const {
  std::vector<std::string> offenders;
  for (const auto& [section, kv] : sections_) {
    for (const auto& [key, value] : kv) {
      if (!known_keys().count({section, key})) {
        offenders.push_back("[" + section + "] " + key);
      }
    }
  }
  if (!offenders.empty()) {
    std::string msg = "unknown config keys:";
    for (const std::string& o : offenders) msg += " " + o + ";";
    throw ConfigError(msg);
  }
}

}  // namespace vliftcli
