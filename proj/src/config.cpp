#include "eitdicke/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "eitdicke/errors.hpp"
#include "eitdicke/csv.hpp"
#include "eitdicke/units.hpp"

namespace eitdicke {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Shortest text that parses back to the same double.
std::string exact(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

double to_double(std::string_view key, std::string_view text) {
  double v = 0.0;
  if (!parse_double(text, v)) throw ConfigError(std::string(key) + ": not a number: '" + std::string(text) + "'");
  return v;
}

std::uint64_t to_uint(std::string_view key, std::string_view text) {
  text = trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(std::string(key) + ": not a non-negative integer: '" + std::string(text) + "'");
  }
  return v;
}

std::vector<double> to_list(std::string_view key, std::string_view text) {
  std::vector<double> out;
  text = trim(text);
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(to_double(key, text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                                     : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string list_text(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ',';
    out += exact(v[i]);
  }
  return out;
}

struct Key {
  std::string name;
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
};

#define EITDICKE_DOUBLE_KEY(NAME, FIELD)                                                              \
  Key {                                                                                               \
    NAME, [](RunConfig& c, std::string_view v) { c.FIELD = to_double(NAME, v); },                     \
        [](const RunConfig& c) { return exact(c.FIELD); }                                             \
  }
#define EITDICKE_UINT_KEY(NAME, FIELD, TYPE)                                                          \
  Key {                                                                                               \
    NAME, [](RunConfig& c, std::string_view v) { c.FIELD = static_cast<TYPE>(to_uint(NAME, v)); },    \
        [](const RunConfig& c) { return std::to_string(c.FIELD); }                                    \
  }
#define EITDICKE_LIST_KEY(NAME, FIELD)                                                                \
  Key {                                                                                               \
    NAME, [](RunConfig& c, std::string_view v) { c.FIELD = to_list(NAME, v); },                       \
        [](const RunConfig& c) { return list_text(c.FIELD); }                                         \
  }
#define EITDICKE_TEXT_KEY(NAME, FIELD)                                                                \
  Key {                                                                                               \
    NAME, [](RunConfig& c, std::string_view v) { c.FIELD = std::string(trim(v)); },                   \
        [](const RunConfig& c) { return c.FIELD; }                                                    \
  }

const std::vector<Key>& key_table() {
  static const std::vector<Key> keys = {
      EITDICKE_DOUBLE_KEY("medium.temperature_c", medium.temperature_c),
      EITDICKE_DOUBLE_KEY("medium.buffer_pressure_torr", medium.buffer_pressure_torr),
      EITDICKE_DOUBLE_KEY("medium.hard_sphere_radius_nm", medium.hard_sphere_radius_nm),
      EITDICKE_DOUBLE_KEY("medium.wavelength_nm", medium.wavelength_nm),
      EITDICKE_TEXT_KEY("medium.active_name", medium.active_name),
      EITDICKE_DOUBLE_KEY("medium.active_mass_u", medium.active_mass_u),
      EITDICKE_TEXT_KEY("medium.buffer_name", medium.buffer_name),
      EITDICKE_DOUBLE_KEY("medium.buffer_mass_u", medium.buffer_mass_u),
      Key{"medium.collision_rate_per_s",
          [](RunConfig& c, std::string_view v) {
            if (trim(v) == "auto") {
              c.medium.collision_rate_per_s.reset();
            } else {
              c.medium.collision_rate_per_s = to_double("medium.collision_rate_per_s", v);
            }
          },
          [](const RunConfig& c) {
            return c.medium.collision_rate_per_s ? exact(*c.medium.collision_rate_per_s) : std::string("auto");
          }},
      EITDICKE_DOUBLE_KEY("eit.gamma_opt_hz", eit.gamma_opt_hz),
      EITDICKE_DOUBLE_KEY("eit.gamma_12_hz", eit.gamma_12_hz),
      EITDICKE_DOUBLE_KEY("eit.rabi_pump_hz", eit.rabi_pump_hz),
      EITDICKE_DOUBLE_KEY("eit.light_shift_hz", eit.light_shift_hz),
      EITDICKE_LIST_KEY("sweep.theta_list_mrad", sweep.theta_list_mrad),
      EITDICKE_DOUBLE_KEY("sweep.theta_min_mrad", sweep.theta_min_mrad),
      EITDICKE_DOUBLE_KEY("sweep.theta_max_mrad", sweep.theta_max_mrad),
      EITDICKE_UINT_KEY("sweep.theta_steps", sweep.theta_steps, std::size_t),
      EITDICKE_DOUBLE_KEY("sweep.grid_span_hz", sweep.grid_span_hz),
      EITDICKE_UINT_KEY("sweep.grid_points", sweep.grid_points, std::size_t),
      EITDICKE_UINT_KEY("mc.n_trajectories", mc.n_trajectories, std::size_t),
      EITDICKE_UINT_KEY("mc.n_time_samples", mc.n_time_samples, std::size_t),
      EITDICKE_DOUBLE_KEY("mc.t_max_s", mc.t_max_s),
      EITDICKE_UINT_KEY("mc.workers", mc.workers, unsigned),
      EITDICKE_DOUBLE_KEY("mc.work_budget", mc.work_budget),
      EITDICKE_UINT_KEY("mc.batches", mc.batches, std::size_t),
      EITDICKE_UINT_KEY("mc.grid_points", mc.grid_points, std::size_t),
      EITDICKE_LIST_KEY("mc.validate_theta_mrad", mc.validate_theta_mrad),
      EITDICKE_DOUBLE_KEY("mc.tolerance", mc.tolerance),
      EITDICKE_DOUBLE_KEY("imaging.waist_radius_um", imaging.waist_radius_um),
      EITDICKE_DOUBLE_KEY("imaging.theta_max_mrad", imaging.theta_max_mrad),
      EITDICKE_DOUBLE_KEY("imaging.background_transmission", imaging.background_transmission),
      EITDICKE_DOUBLE_KEY("imaging.eit_contrast", imaging.eit_contrast),
      EITDICKE_UINT_KEY("imaging.n_radii", imaging.n_radii, std::size_t),
      EITDICKE_DOUBLE_KEY("imaging.noise", imaging.noise),
      EITDICKE_TEXT_KEY("run.output_dir", output_dir),
      EITDICKE_UINT_KEY("run.seed", seed, std::uint64_t),
  };
  return keys;
}

#undef EITDICKE_DOUBLE_KEY
#undef EITDICKE_UINT_KEY
#undef EITDICKE_LIST_KEY
#undef EITDICKE_TEXT_KEY

const Key& find_key(std::string_view name) {
  for (const auto& k : key_table()) {
    if (k.name == name) return k;
  }
  throw ConfigError("unknown configuration key '" + std::string(name) + "'");
}

// Splits "key=value"; `where` prefixes the error message.
std::pair<std::string_view, std::string_view> split_assignment(std::string_view line, const std::string& where) {
  const auto eq = line.find('=');
  if (eq == std::string_view::npos) throw ConfigError(where + ": expected key=value, got '" + std::string(line) + "'");
  const auto key = trim(line.substr(0, eq));
  if (key.empty()) throw ConfigError(where + ": empty key");
  return {key, trim(line.substr(eq + 1))};
}

void require(bool ok, std::string_view key, std::string_view what) {
  if (!ok) throw ConfigError("invalid configuration: " + std::string(key) + " " + std::string(what));
}

}  // namespace

MediumParams RunConfig::medium_params() const {
  MediumParams m;
  m.temperature_k = units::celsius(medium.temperature_c);
  m.buffer_pressure_pa = units::torr(medium.buffer_pressure_torr);
  m.active = {medium.active_name, medium.active_mass_u * units::kAtomicMassUnit};
  m.buffer = {medium.buffer_name, medium.buffer_mass_u * units::kAtomicMassUnit};
  m.hard_sphere_radius_m = medium.hard_sphere_radius_nm * 1e-9;
  m.optical_wavelength_m = medium.wavelength_nm * 1e-9;
  return m;
}

KineticsReport RunConfig::kinetics() const {
  const auto m = medium_params();
  return medium.collision_rate_per_s ? kinetics_report_with_rate(m, *medium.collision_rate_per_s)
                                     : kinetics_report(m);
}

EitParams RunConfig::eit_params() const {
  EitParams p;
  p.gamma_opt = units::hz_to_rad(eit.gamma_opt_hz);
  p.gamma_12 = units::hz_to_rad(eit.gamma_12_hz);
  p.rabi_pump = units::hz_to_rad(eit.rabi_pump_hz);
  p.light_shift = units::hz_to_rad(eit.light_shift_hz);
  return p;
}

BeamGeometry RunConfig::geometry(double theta_mrad) const {
  BeamGeometry g{units::mrad(theta_mrad), medium.wavelength_nm * 1e-9};
  g.validate();
  return g;
}

ImagingConfig RunConfig::imaging_config() const {
  ImagingConfig c;
  c.waist_radius = imaging.waist_radius_um * 1e-6;
  c.theta_max = units::mrad(imaging.theta_max_mrad);
  c.background_transmission = imaging.background_transmission;
  c.eit_contrast = imaging.eit_contrast;
  c.n_radii = imaging.n_radii;
  return c;
}

McConfig RunConfig::mc_config(double theta_mrad) const {
  const auto kin = kinetics();
  const auto geom = geometry(theta_mrad);
  McConfig c;
  c.delta_q = geom.delta_q();
  c.v_th = kin.v_th;
  c.collision_rate = kin.collision_rate;
  c.gamma_12 = units::hz_to_rad(eit.gamma_12_hz);
  c.n_trajectories = mc.n_trajectories;
  c.n_time_samples = mc.n_time_samples;
  c.t_max = mc.t_max_s > 0.0 ? mc.t_max_s : default_t_max(c.delta_q, c.v_th, c.collision_rate, c.gamma_12);
  c.seed = seed;
  c.workers = mc.workers;
  c.work_budget = mc.work_budget;
  return c;
}

void RunConfig::validate() const {
  require(medium.temperature_c > -units::kZeroCelsius, "medium.temperature_c", "must be above absolute zero");
  require(medium.buffer_pressure_torr >= 0.0, "medium.buffer_pressure_torr", "must be >= 0");
  require(medium.hard_sphere_radius_nm > 0.0, "medium.hard_sphere_radius_nm", "must be > 0");
  require(medium.wavelength_nm > 0.0, "medium.wavelength_nm", "must be > 0");
  require(medium.active_mass_u > 0.0, "medium.active_mass_u", "must be > 0");
  require(medium.buffer_mass_u > 0.0, "medium.buffer_mass_u", "must be > 0");
  require(!medium.collision_rate_per_s || *medium.collision_rate_per_s >= 0.0, "medium.collision_rate_per_s",
          "must be >= 0 or auto");
  require(eit.gamma_opt_hz > 0.0, "eit.gamma_opt_hz", "must be > 0");
  require(eit.gamma_12_hz >= 0.0, "eit.gamma_12_hz", "must be >= 0");
  require(eit.rabi_pump_hz >= 0.0, "eit.rabi_pump_hz", "must be >= 0");
  require(std::isfinite(eit.light_shift_hz), "eit.light_shift_hz", "must be finite");
  for (double t : sweep.theta_list_mrad) {
    require(t >= 0.0 && t <= 10.0, "sweep.theta_list_mrad", "entries must lie in [0, 10] mrad");
  }
  require(sweep.theta_min_mrad >= 0.0 && sweep.theta_max_mrad <= 10.0 && sweep.theta_min_mrad <= sweep.theta_max_mrad,
          "sweep.theta_min_mrad/theta_max_mrad", "must satisfy 0 <= min <= max <= 10");
  require(sweep.theta_steps >= 1, "sweep.theta_steps", "must be >= 1");
  require(sweep.grid_span_hz >= 0.0, "sweep.grid_span_hz", "must be >= 0 (0 = automatic)");
  require(sweep.grid_points >= 8, "sweep.grid_points", "must be >= 8");
  require(mc.n_trajectories >= 1, "mc.n_trajectories", "must be >= 1");
  require(mc.n_time_samples >= 2, "mc.n_time_samples", "must be >= 2");
  require(mc.t_max_s >= 0.0, "mc.t_max_s", "must be >= 0 (0 = automatic)");
  require(mc.work_budget > 0.0, "mc.work_budget", "must be > 0");
  require(mc.grid_points >= 8, "mc.grid_points", "must be >= 8");
  for (double t : mc.validate_theta_mrad) {
    require(t >= 0.0 && t <= 10.0, "mc.validate_theta_mrad", "entries must lie in [0, 10] mrad");
  }
  require(mc.tolerance > 0.0, "mc.tolerance", "must be > 0");
  require(imaging.waist_radius_um > 0.0, "imaging.waist_radius_um", "must be > 0");
  require(imaging.theta_max_mrad >= 0.0, "imaging.theta_max_mrad", "must be >= 0");
  require(imaging.background_transmission > 0.0 && imaging.background_transmission <= 1.0,
          "imaging.background_transmission", "must lie in (0, 1]");
  require(imaging.eit_contrast >= 0.0 && imaging.eit_contrast <= 1.0 - imaging.background_transmission,
          "imaging.eit_contrast", "must lie in [0, 1 - background_transmission]");
  require(imaging.n_radii >= 2, "imaging.n_radii", "must be >= 2");
  require(imaging.noise >= 0.0, "imaging.noise", "must be >= 0");
  try {
    medium_params().validate();
    eit_params().validate();
    imaging_config().validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid configuration: ") + e.what());
  }
}

RunConfig parse_config(std::string_view text, std::span<const std::string> overrides) {
  RunConfig cfg;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++line_no;
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "config line " + std::to_string(line_no);
    const auto [key, value] = split_assignment(line, where);
    try {
      find_key(key).set(cfg, value);
    } catch (const ConfigError& e) {
      throw ConfigError(where + ": " + e.what());
    }
  }
  for (const auto& o : overrides) {
    const auto [key, value] = split_assignment(o, "override '" + o + "'");
    find_key(key).set(cfg, value);
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path, std::span<const std::string> overrides) {
  if (path.empty()) return parse_config({}, overrides);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), overrides);
}

std::string dump_config(const RunConfig& cfg) {
  std::string out = "# eitdicke effective configuration\n";
  for (const auto& k : key_table()) {
    out += k.name;
    out += '=';
    out += k.get(cfg);
    out += '\n';
  }
  return out;
}

std::vector<std::string> config_keys() {
  std::vector<std::string> out;
  for (const auto& k : key_table()) out.push_back(k.name);
  return out;
}

}  // namespace eitdicke
