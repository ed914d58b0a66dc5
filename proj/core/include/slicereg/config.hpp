#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "slicereg/phantom.hpp"
#include "slicereg/profiles.hpp"
#include "slicereg/registration.hpp"

namespace slicereg {

/// TOML-style key/value configuration: `[section]` headers, `key = value`
/// lines, `#` comments, numeric arrays in brackets.
class Config {
public:
  Config() = default;
  static Config parse_file(const std::filesystem::path& path);
  static Config parse_string(const std::string& text, const std::string& origin = "<string>");

  bool has(const std::string& section, const std::string& key) const;
  double get_double(const std::string& section, const std::string& key, double fallback) const;
  long get_long(const std::string& section, const std::string& key, long fallback) const;
  std::string get_string(const std::string& section, const std::string& key,
                         const std::string& fallback) const;
  std::vector<double> get_array(const std::string& section, const std::string& key) const;

  /// Throwing accessors for required keys; DataError names the section/key.
  double require_double(const std::string& section, const std::string& key) const;

private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
  std::string origin_;
  const std::string& raw(const std::string& section, const std::string& key) const;
};

/// Section loaders with the documented defaults.
InitConfig init_config_from(const Config& cfg);                        // [init]
OptimConfig optim_config_from(const Config& cfg, const std::string& section);  // [joint]/[separate]
PhantomSpec phantom_spec_from(const Config& cfg);                      // [phantom]

}  // namespace slicereg
