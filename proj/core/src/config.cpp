#include "slicereg/config.hpp"

#include <fstream>
#include <sstream>

#include "slicereg/errors.hpp"

namespace slicereg {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  const auto b = s.find_last_not_of(" \t\r");
  return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
}

}  // namespace

Config Config::parse_string(const std::string& text, const std::string& origin) {
  Config cfg;
  cfg.origin_ = origin;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw DataError(origin + ":" + std::to_string(lineno) + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw DataError(origin + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
      value = value.substr(1, value.size() - 2);
    if (key.empty())
      throw DataError(origin + ":" + std::to_string(lineno) + ": empty key");
    cfg.sections_[section][key] = value;
  }
  return cfg;
}

Config Config::parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config file: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_string(buf.str(), path.string());
}

bool Config::has(const std::string& section, const std::string& key) const {
  const auto s = sections_.find(section);
  return s != sections_.end() && s->second.count(key) > 0;
}

const std::string& Config::raw(const std::string& section, const std::string& key) const {
  const auto s = sections_.find(section);
  if (s == sections_.end() || !s->second.count(key))
    throw DataError(origin_ + ": missing config key [" + section + "] " + key);
  return s->second.at(key);
}

double Config::get_double(const std::string& section, const std::string& key,
                          double fallback) const {
  if (!has(section, key)) return fallback;
  return require_double(section, key);
}

double Config::require_double(const std::string& section, const std::string& key) const {
  const std::string& v = raw(section, key);
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw DataError(origin_ + ": config key [" + section + "] " + key +
                    " is not a number: " + v);
  }
}

long Config::get_long(const std::string& section, const std::string& key, long fallback) const {
  if (!has(section, key)) return fallback;
  return static_cast<long>(require_double(section, key));
}

std::string Config::get_string(const std::string& section, const std::string& key,
                               const std::string& fallback) const {
  return has(section, key) ? raw(section, key) : fallback;
}

std::vector<double> Config::get_array(const std::string& section, const std::string& key) const {
  const std::string& v = raw(section, key);
  if (v.size() < 2 || v.front() != '[' || v.back() != ']')
    throw DataError(origin_ + ": config key [" + section + "] " + key + " is not an array: " + v);
  std::vector<double> out;
  std::stringstream ss(v.substr(1, v.size() - 2));
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw DataError(origin_ + ": config key [" + section + "] " + key +
                      " has a non-numeric element: " + item);
    }
  }
  return out;
}

InitConfig init_config_from(const Config& cfg) {
  InitConfig c;
  c.lr_scaling = cfg.get_double("init", "lr_scaling", c.lr_scaling);
  c.lr_offset_z = cfg.get_double("init", "lr_offset_z", c.lr_offset_z);
  c.lr_spacing = cfg.get_double("init", "lr_spacing", c.lr_spacing);
  c.momentum = cfg.get_double("init", "momentum", c.momentum);
  c.iterations = cfg.get_long("init", "iterations", c.iterations);
  if (c.lr_scaling < 0 || c.lr_offset_z < 0 || c.lr_spacing < 0)
    throw DataError("[init]: learning rates must be >= 0");
  if (c.momentum < 0 || c.momentum >= 1) throw DataError("[init]: momentum must be in [0,1)");
  if (c.iterations < 1) throw DataError("[init]: iterations must be >= 1");
  return c;
}

OptimConfig optim_config_from(const Config& cfg, const std::string& section) {
  OptimConfig c;
  c.lr_rotation = cfg.get_double(section, "lr_rotation", c.lr_rotation);
  c.lr_scaling = cfg.get_double(section, "lr_scaling", c.lr_scaling);
  c.lr_spacing = cfg.get_double(section, "lr_spacing", c.lr_spacing);
  c.lr_offset_z = cfg.get_double(section, "lr_offset_z", c.lr_offset_z);
  c.lr_offset_xy = cfg.get_double(section, "lr_offset_xy", c.lr_offset_xy);
  c.momentum = cfg.get_double(section, "momentum", c.momentum);
  c.stop_window = cfg.get_long(section, "stop_window", c.stop_window);
  c.stop_tol = cfg.get_double(section, "stop_tol", c.stop_tol);
  c.max_iterations = cfg.get_long(section, "max_iterations", c.max_iterations);
  c.stride = static_cast<int>(cfg.get_long(section, "stride", c.stride));
  c.smoothing_radius = static_cast<int>(cfg.get_long(section, "smoothing_radius", 0));
  if (c.momentum < 0 || c.momentum >= 1)
    throw DataError("[" + section + "]: momentum must be in [0,1)");
  if (c.stop_window < 1) throw DataError("[" + section + "]: stop_window must be >= 1");
  if (!(c.stop_tol > 0)) throw DataError("[" + section + "]: stop_tol must be > 0");
  if (c.stride < 1) throw DataError("[" + section + "]: stride must be >= 1");
  return c;
}

PhantomSpec phantom_spec_from(const Config& cfg) {
  PhantomSpec s;
  if (cfg.has("phantom", "semi_axes")) {
    const auto a = cfg.get_array("phantom", "semi_axes");
    if (a.size() != 3) throw DataError("[phantom]: semi_axes needs 3 elements");
    s.semi_axes = {a[0], a[1], a[2]};
  }
  s.exponent = cfg.get_double("phantom", "exponent", s.exponent);
  if (cfg.has("phantom", "dims")) {
    const auto d = cfg.get_array("phantom", "dims");
    if (d.size() != 3) throw DataError("[phantom]: dims needs 3 elements");
    s.dims = {static_cast<int>(d[0]), static_cast<int>(d[1]), static_cast<int>(d[2])};
  }
  s.voxel_size = cfg.get_double("phantom", "voxel_size", s.voxel_size);
  s.bump_amplitude = cfg.get_double("phantom", "bump_amplitude", s.bump_amplitude);
  s.bump_count = static_cast<int>(cfg.get_long("phantom", "bump_count", s.bump_count));
  s.bump_frequency = cfg.get_double("phantom", "bump_frequency", s.bump_frequency);
  s.slice_count = static_cast<int>(cfg.get_long("phantom", "slice_count", s.slice_count));
  s.photo_width = static_cast<int>(cfg.get_long("phantom", "photo_width", s.photo_width));
  s.photo_height = static_cast<int>(cfg.get_long("phantom", "photo_height", s.photo_height));
  s.core_outer_radius = cfg.get_double("phantom", "core_outer_radius", s.core_outer_radius);
  s.core_inner_radius = cfg.get_double("phantom", "core_inner_radius", s.core_inner_radius);
  s.core_half_height = cfg.get_double("phantom", "core_half_height", s.core_half_height);
  s.flesh_intensity = cfg.get_double("phantom", "flesh_intensity", s.flesh_intensity);
  s.core_intensity = cfg.get_double("phantom", "core_intensity", s.core_intensity);
  s.intensity_noise_sigma =
      cfg.get_double("phantom", "intensity_noise_sigma", s.intensity_noise_sigma);
  s.slice_jitter_rad = cfg.get_double("phantom", "slice_jitter_rad", s.slice_jitter_rad);
  s.seed = static_cast<std::uint64_t>(cfg.get_long("phantom", "seed", static_cast<long>(s.seed)));

  s.truth.rotation_x = cfg.get_double("phantom", "truth_rotation_x", 0.0);
  s.truth.rotation_y = cfg.get_double("phantom", "truth_rotation_y", 0.0);
  s.truth.rotation_z = cfg.get_double("phantom", "truth_rotation_z", 0.0);
  s.truth.scaling = cfg.get_double("phantom", "truth_scaling", 1.0);
  s.truth.spacing = cfg.get_double("phantom", "truth_spacing", 4.0);
  s.truth.offset_z = cfg.get_double("phantom", "truth_offset_z",
                                    -0.5 * s.truth.spacing * (s.slice_count - 1));
  s.truth.per_slice_offsets.assign(static_cast<std::size_t>(s.slice_count), {0.0, 0.0});
  if (cfg.has("phantom", "truth_offsets")) {
    const auto o = cfg.get_array("phantom", "truth_offsets");
    if (o.size() != static_cast<std::size_t>(2 * s.slice_count))
      throw DataError("[phantom]: truth_offsets needs 2*slice_count elements");
    for (int k = 0; k < s.slice_count; ++k)
      s.truth.per_slice_offsets[static_cast<std::size_t>(k)] = {o[static_cast<std::size_t>(2 * k)],
                                                                o[static_cast<std::size_t>(2 * k + 1)]};
  }
  return s;
}

}  // namespace slicereg
