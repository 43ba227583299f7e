#pragma once

#include <string>
#include <vector>

#include "fastlight/fourwm.hpp"
#include "fastlight/medium.hpp"
#include "fastlight/pulse.hpp"

namespace fastlight {

// Config files keep the literature-facing conventions: line strengths are
// absorption-positive coefficients in 1/m (alpha < 0 means gain) and line
// widths/centers are ordinary-frequency MHz (hwhm).  Parsing negates alpha
// into the internal gain-positive `strength` and converts MHz to rad/s;
// serialization restores the file-facing values bit-exactly.

struct LineConfig {
  double center_mhz = 0.0;
  double hwhm_mhz = 0.0;
  double alpha_per_m = 0.0;  // absorption-positive; negated on conversion
};

struct ChannelConfig {
  double background_index = 1.0;
  double length_m = 0.0;
  std::vector<LineConfig> lines;

  MediumChannel to_channel() const;
};

struct SweepGrid {
  double start_hz = -3.0e7;
  double stop_hz = 5.0e7;
  double step_hz = 1.0e6;

  std::vector<double> deltas() const;
  void validate() const;
};

struct Thresholds {
  double measurability = 0.02;  // conjugate peak power fraction of reference
  double distortion_cap = 0.1;  // default cap for the max-advance search
  double wraparound = 1e-6;     // edge-energy fraction guard

  void validate() const;
};

struct RunConfig {
  ChannelConfig seed;
  ChannelConfig conjugate;
  FourWMGeometry geometry;  // Hz and kappa, stored as in the file
  PulseSpec pulse;
  GridSpec grid;
  SweepGrid sweep;
  Thresholds thresholds;
  std::string notes;  // free-form, preserved through round trips

  MediumChannel seed_channel() const { return seed.to_channel(); }
  MediumChannel conjugate_channel() const { return conjugate.to_channel(); }
  void validate() const;
};

/// Parse and validate a config; unknown keys are rejected (strict mode) and
/// errors name the offending key and constraint.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

std::string serialize_config(const RunConfig& config);
void save_config(const RunConfig& config, const std::string& path);

/// The shipped default parameter set (same content as configs/default.json).
RunConfig default_config();

}  // namespace fastlight
