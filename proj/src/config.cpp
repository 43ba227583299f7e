#include "fastlight/config.hpp"

#include <json.hpp>  // vendored nlohmann/json

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "fastlight/errors.hpp"
#include "fastlight/units.hpp"

namespace fastlight {

using nlohmann::json;

MediumChannel ChannelConfig::to_channel() const {
  MediumChannel ch;
  ch.background_index = background_index;
  ch.length = length_m;
  for (const auto& line : lines) {
    LineComponent c;
    c.center_detuning = mhz_to_angular(line.center_mhz);
    c.hwhm = mhz_to_angular(line.hwhm_mhz);
    c.strength = -line.alpha_per_m;  // absorption-positive -> gain-positive
    ch.lines.push_back(c);
  }
  return ch;
}

std::vector<double> SweepGrid::deltas() const {
  validate();
  std::vector<double> out;
  const auto count = static_cast<std::size_t>(
      std::floor((stop_hz - start_hz) / step_hz + 0.5)) + 1;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double d = start_hz + static_cast<double>(i) * step_hz;
    if (d > stop_hz + 0.5 * step_hz) break;
    out.push_back(d);
  }
  return out;
}

void SweepGrid::validate() const {
  if (!std::isfinite(start_hz) || !std::isfinite(stop_hz) || !std::isfinite(step_hz))
    throw ValidationError("sweep bounds must be finite");
  if (!(step_hz > 0.0)) throw ValidationError("sweep.delta_step_hz must be positive");
  if (!(stop_hz >= start_hz))
    throw ValidationError("sweep.delta_stop_hz must be >= sweep.delta_start_hz");
}

void Thresholds::validate() const {
  if (!(measurability > 0.0) || !(measurability < 1.0))
    throw ValidationError("thresholds.measurability must be in (0, 1)");
  if (!(distortion_cap >= 0.0))
    throw ValidationError("thresholds.distortion_cap must be >= 0");
  if (!(wraparound > 0.0) || !(wraparound < 1.0))
    throw ValidationError("thresholds.wraparound must be in (0, 1)");
}

void RunConfig::validate() const {
  seed_channel().validate();
  conjugate_channel().validate();
  geometry.validate();
  pulse.validate();
  grid.validate();
  sweep.validate();
  thresholds.validate();
  if (grid.window < 8.0 * pulse.fwhm)
    throw ValidationError("grid.window_s must be at least 8x pulse.fwhm_s");
}

namespace {

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& required,
                  const std::set<std::string>& optional = {}) {
  if (!obj.is_object()) throw ValidationError(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!required.count(key) && !optional.count(key))
      throw ValidationError("unknown key \"" + where + "." + key + "\"");
  }
  for (const auto& key : required)
    if (!obj.contains(key))
      throw ValidationError("missing key \"" + where + "." + key + "\"");
}

double get_number(const json& obj, const std::string& where, const std::string& key) {
  const auto& v = obj.at(key);
  if (!v.is_number())
    throw ValidationError("key \"" + where + "." + key + "\" must be a number");
  return v.get<double>();
}

ChannelConfig parse_channel(const json& obj, const std::string& where) {
  require_keys(obj, where, {"background_index", "length_m", "lines"});
  ChannelConfig ch;
  ch.background_index = get_number(obj, where, "background_index");
  ch.length_m = get_number(obj, where, "length_m");
  const auto& lines = obj.at("lines");
  if (!lines.is_array()) throw ValidationError(where + ".lines must be an array");
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::ostringstream w;
    w << where << ".lines[" << i << "]";
    require_keys(lines[i], w.str(), {"center_mhz", "hwhm_mhz", "alpha_per_m"});
    LineConfig line;
    line.center_mhz = get_number(lines[i], w.str(), "center_mhz");
    line.hwhm_mhz = get_number(lines[i], w.str(), "hwhm_mhz");
    line.alpha_per_m = get_number(lines[i], w.str(), "alpha_per_m");
    if (!(line.hwhm_mhz > 0.0))
      throw ValidationError("hwhm must be positive (key \"" + w.str() + ".hwhm_mhz\")");
    if (line.alpha_per_m == 0.0 || !std::isfinite(line.alpha_per_m))
      throw ValidationError("alpha must be finite and nonzero (key \"" + w.str() +
                            ".alpha_per_m\"); drop the line instead of zeroing it");
    ch.lines.push_back(line);
  }
  return ch;
}

std::string format17(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& err) {
    throw ValidationError(std::string("config is not valid JSON: ") + err.what());
  }
  require_keys(root, "config",
               {"medium", "geometry", "pulse", "grid", "sweep", "thresholds"}, {"notes"});

  RunConfig cfg;
  const auto& medium = root.at("medium");
  require_keys(medium, "medium", {"seed", "conjugate"});
  cfg.seed = parse_channel(medium.at("seed"), "medium.seed");
  cfg.conjugate = parse_channel(medium.at("conjugate"), "medium.conjugate");

  const auto& geo = root.at("geometry");
  require_keys(geo, "geometry",
               {"pump_detuning_hz", "seed_offset_hz", "delta_hz", "kappa"});
  cfg.geometry.pump_detuning = get_number(geo, "geometry", "pump_detuning_hz");
  cfg.geometry.seed_offset = get_number(geo, "geometry", "seed_offset_hz");
  cfg.geometry.two_photon_detuning = get_number(geo, "geometry", "delta_hz");
  cfg.geometry.coupling = get_number(geo, "geometry", "kappa");

  const auto& pulse = root.at("pulse");
  require_keys(pulse, "pulse", {"shape", "fwhm_s", "peak_amplitude", "center_time_s"});
  const std::string shape = pulse.at("shape").get<std::string>();
  if (shape != "gaussian")
    throw ValidationError("pulse.shape must be \"gaussian\"");
  cfg.pulse.shape = PulseShape::gaussian;
  cfg.pulse.fwhm = get_number(pulse, "pulse", "fwhm_s");
  cfg.pulse.peak_amplitude = get_number(pulse, "pulse", "peak_amplitude");
  cfg.pulse.center_time = get_number(pulse, "pulse", "center_time_s");

  const auto& grid = root.at("grid");
  require_keys(grid, "grid", {"window_s", "n_points"});
  cfg.grid.window = get_number(grid, "grid", "window_s");
  const auto& np = grid.at("n_points");
  if (!np.is_number_unsigned())
    throw ValidationError("grid.n_points must be a positive integer");
  cfg.grid.n_points = np.get<std::size_t>();

  const auto& sweep = root.at("sweep");
  require_keys(sweep, "sweep", {"delta_start_hz", "delta_stop_hz", "delta_step_hz"});
  cfg.sweep.start_hz = get_number(sweep, "sweep", "delta_start_hz");
  cfg.sweep.stop_hz = get_number(sweep, "sweep", "delta_stop_hz");
  cfg.sweep.step_hz = get_number(sweep, "sweep", "delta_step_hz");

  const auto& thr = root.at("thresholds");
  require_keys(thr, "thresholds", {"measurability", "distortion_cap", "wraparound"});
  cfg.thresholds.measurability = get_number(thr, "thresholds", "measurability");
  cfg.thresholds.distortion_cap = get_number(thr, "thresholds", "distortion_cap");
  cfg.thresholds.wraparound = get_number(thr, "thresholds", "wraparound");

  if (root.contains("notes")) cfg.notes = root.at("notes").get<std::string>();

  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const RunConfig& cfg) {
  // Hand-rolled emission so every double goes through %.17g and round trips
  // bit-exactly.
  std::ostringstream out;
  const auto channel = [&](const ChannelConfig& ch, const std::string& name) {
    out << "    \"" << name << "\": {\n";
    out << "      \"background_index\": " << format17(ch.background_index) << ",\n";
    out << "      \"length_m\": " << format17(ch.length_m) << ",\n";
    out << "      \"lines\": [";
    for (std::size_t i = 0; i < ch.lines.size(); ++i) {
      if (i) out << ",";
      out << "\n        {\"center_mhz\": " << format17(ch.lines[i].center_mhz)
          << ", \"hwhm_mhz\": " << format17(ch.lines[i].hwhm_mhz)
          << ", \"alpha_per_m\": " << format17(ch.lines[i].alpha_per_m) << "}";
    }
    if (!ch.lines.empty()) out << "\n      ";
    out << "]\n    }";
  };

  out << "{\n  \"medium\": {\n";
  channel(cfg.seed, "seed");
  out << ",\n";
  channel(cfg.conjugate, "conjugate");
  out << "\n  },\n";
  out << "  \"geometry\": {\n"
      << "    \"pump_detuning_hz\": " << format17(cfg.geometry.pump_detuning) << ",\n"
      << "    \"seed_offset_hz\": " << format17(cfg.geometry.seed_offset) << ",\n"
      << "    \"delta_hz\": " << format17(cfg.geometry.two_photon_detuning) << ",\n"
      << "    \"kappa\": " << format17(cfg.geometry.coupling) << "\n  },\n";
  out << "  \"pulse\": {\n"
      << "    \"shape\": \"gaussian\",\n"
      << "    \"fwhm_s\": " << format17(cfg.pulse.fwhm) << ",\n"
      << "    \"peak_amplitude\": " << format17(cfg.pulse.peak_amplitude) << ",\n"
      << "    \"center_time_s\": " << format17(cfg.pulse.center_time) << "\n  },\n";
  out << "  \"grid\": {\n"
      << "    \"window_s\": " << format17(cfg.grid.window) << ",\n"
      << "    \"n_points\": " << cfg.grid.n_points << "\n  },\n";
  out << "  \"sweep\": {\n"
      << "    \"delta_start_hz\": " << format17(cfg.sweep.start_hz) << ",\n"
      << "    \"delta_stop_hz\": " << format17(cfg.sweep.stop_hz) << ",\n"
      << "    \"delta_step_hz\": " << format17(cfg.sweep.step_hz) << "\n  },\n";
  out << "  \"thresholds\": {\n"
      << "    \"measurability\": " << format17(cfg.thresholds.measurability) << ",\n"
      << "    \"distortion_cap\": " << format17(cfg.thresholds.distortion_cap) << ",\n"
      << "    \"wraparound\": " << format17(cfg.thresholds.wraparound) << "\n  }";
  if (!cfg.notes.empty()) out << ",\n  \"notes\": " << json(cfg.notes).dump();
  out << "\n}\n";
  return out.str();
}

void save_config(const RunConfig& cfg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open config file for writing: " + path);
  out << serialize_config(cfg);
}

RunConfig default_config() {
  RunConfig cfg;
  cfg.seed.background_index = 1.0;
  cfg.seed.length_m = 0.017;
  cfg.seed.lines = {{0.0, 20.0, -175.0}};

  cfg.conjugate.background_index = 1.0;
  cfg.conjugate.length_m = 0.017;
  // Gain line at the channel reference; absorption 20 MHz to the blue (the
  // spacing is a calibrated constant, see configs/default.json notes).
  cfg.conjugate.lines = {{0.0, 20.0, -175.0}, {20.0, 23.0, 95.0}};

  cfg.geometry.pump_detuning = 4.0e8;
  cfg.geometry.seed_offset = 3.0e9;
  cfg.geometry.two_photon_detuning = 2.3e7;
  cfg.geometry.coupling = 0.1257;

  cfg.pulse.shape = PulseShape::gaussian;
  cfg.pulse.fwhm = 2.0e-7;
  cfg.pulse.peak_amplitude = 1.0;
  cfg.pulse.center_time = 2.0e-6;

  cfg.grid.window = 4.0e-6;
  cfg.grid.n_points = 4096;

  cfg.sweep.start_hz = -3.0e7;
  cfg.sweep.stop_hz = 5.0e7;
  cfg.sweep.step_hz = 1.0e6;

  cfg.thresholds.measurability = 0.02;
  cfg.thresholds.distortion_cap = 0.1;
  cfg.thresholds.wraparound = 1e-6;
  cfg.notes =
      "alpha_per_m keeps the absorption-positive sign convention (alpha < 0 is gain) "
      "and is negated on load; hwhm/center are ordinary-frequency MHz, converted to "
      "rad/s by 2*pi. The conjugate line spacing (20 MHz) and kappa were calibrated "
      "against the measurability cutoff near delta = -20 MHz and the 20% conjugate "
      "amplitude at delta = +23 MHz; see README for the calibration procedure and "
      "the known advancement-scale limitation of this line model.";
  return cfg;
}

}  // namespace fastlight
