#include "fastlight/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fastlight/errors.hpp"
#include "fastlight/fourwm.hpp"
#include "fastlight/propagate.hpp"
#include "fastlight/trace_io.hpp"
#include "fastlight/units.hpp"

namespace fastlight {

namespace {

struct PairOutcome {
  PropagationResult seed;
  PropagationResult conjugate;
};

PairOutcome propagate_pair(const RunConfig& config, const SampledTrace& reference,
                           double delta_hz) {
  const ChannelDetunings det = channel_detunings(config.geometry, delta_hz);
  const MediumChannel seed_ch = shifted_to_carrier(config.seed_channel(), det.seed);
  const MediumChannel conj_ch =
      shifted_to_carrier(config.conjugate_channel(), det.conjugate);

  PairOutcome out;
  out.seed = propagate_pulse(reference, seed_ch, config.thresholds.wraparound);
  out.conjugate = stimulate_conjugate(reference, config.geometry, conj_ch,
                                      config.thresholds.wraparound);
  return out;
}

double peak_amplitude(const SampledTrace& trace) {
  return *std::max_element(trace.samples.begin(), trace.samples.end());
}

}  // namespace

std::vector<SweepRow> run_detuning_sweep(const RunConfig& config) {
  config.validate();
  const SampledTrace reference = synthesize(config.pulse, config.grid);
  const double ref_peak = peak_amplitude(reference);
  const double length = config.seed.length_m;

  std::vector<SweepRow> rows;
  for (double delta : config.sweep.deltas()) {
    SweepRow row;
    row.delta_hz = delta;
    try {
      const PairOutcome pair = propagate_pair(config, reference, delta);

      const double conj_peak = peak_amplitude(pair.conjugate.output);
      row.conjugate_measurable =
          conj_peak * conj_peak >=
          config.thresholds.measurability * ref_peak * ref_peak;

      const AdvancementMetrics seed_m = advancement(pair.seed.output, reference, length);
      const AdvancementMetrics conj_m =
          advancement(pair.conjugate.output, reference, length);
      row.seed_advance = seed_m.peak_advance;
      row.conjugate_advance = conj_m.peak_advance;
      row.seed_gain = seed_m.intensity_gain;
      row.conjugate_gain = conj_m.intensity_gain;
      row.seed_distortion = seed_m.distortion;
      row.conjugate_distortion = conj_m.distortion;
      row.seed_relative_advance = seed_m.relative_advance;
      row.conjugate_relative_advance = conj_m.relative_advance;
    } catch (const NumericError& err) {
      row.error = err.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

TracePairResult run_trace_pair(const RunConfig& config, double delta_hz) {
  config.validate();
  const SampledTrace reference = synthesize(config.pulse, config.grid);
  const PairOutcome pair = propagate_pair(config, reference, delta_hz);
  const double length = config.seed.length_m;

  TracePairResult result;
  result.delta_hz = delta_hz;
  result.seed_metrics = advancement(pair.seed.output, reference, length);
  result.conjugate_metrics = advancement(pair.conjugate.output, reference, length);

  const double ref_peak = peak_amplitude(reference);
  const double seed_peak = peak_amplitude(pair.seed.output);
  const double conj_peak = peak_amplitude(pair.conjugate.output);
  result.seed_peak_ratio = seed_peak / ref_peak;
  result.conjugate_peak_ratio = conj_peak / ref_peak;

  const auto normalized = [](SampledTrace trace, double peak) {
    if (peak > 0.0)
      for (auto& s : trace.samples) s /= peak;
    return trace;
  };
  result.reference = normalized(reference, ref_peak);
  result.seed = normalized(pair.seed.output, seed_peak);
  result.conjugate = normalized(pair.conjugate.output, conj_peak);
  return result;
}

SearchResult search_max_advance(const RunConfig& config, double distortion_cap) {
  if (!(distortion_cap >= 0.0)) throw ValidationError("distortion_cap must be >= 0");
  const std::vector<SweepRow> rows = run_detuning_sweep(config);

  bool found = false;
  SearchResult best;
  for (const auto& row : rows) {
    if (!row.error.empty() || row.conjugate_distortion > distortion_cap) continue;
    const bool better =
        !found || row.conjugate_advance > best.advancement ||
        (row.conjugate_advance == best.advancement &&
         std::abs(row.delta_hz) < std::abs(best.delta_hz));
    if (better) {
      best.delta_hz = row.delta_hz;
      best.advancement = row.conjugate_advance;
      best.distortion = row.conjugate_distortion;
      found = true;
    }
  }
  if (!found)
    throw NumericError("no delta satisfies distortion cap " +
                       format_float(distortion_cap));
  return best;
}

std::vector<std::string> geometry_header(const RunConfig& config) {
  const double pump = config.geometry.pump_detuning;
  const double seed = config.geometry.seed_frequency(0.0);
  const double conj = conjugate_frequency(pump, seed);
  std::vector<std::string> lines;
  lines.push_back("pump_detuning_hz=" + format_float(pump));
  lines.push_back("seed_frequency_hz=" + format_float(seed));
  lines.push_back("conjugate_frequency_hz=" + format_float(conj));
  lines.push_back("seed_minus_conjugate_hz=" + format_float(seed - conj));
  lines.push_back("frequency_constraint_residual_hz=" +
                  format_float(seed + conj - 2.0 * pump));
  return lines;
}

}  // namespace fastlight
