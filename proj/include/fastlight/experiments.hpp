#pragma once

#include <string>
#include <vector>

#include "fastlight/config.hpp"
#include "fastlight/metrics.hpp"
#include "fastlight/pulse.hpp"

namespace fastlight {

/// One detuning of the sweep.  Advancements are positive when the pulse peak
/// exits earlier than the c-propagating reference; gains are peak power
/// ratios against the reference.  A nonempty `error` marks a row whose
/// propagation failed; its numbers are meaningless.
struct SweepRow {
  double delta_hz = 0.0;
  double seed_advance = 0.0;       // s
  double conjugate_advance = 0.0;  // s
  double seed_gain = 0.0;
  double conjugate_gain = 0.0;
  bool conjugate_measurable = false;
  double seed_distortion = 0.0;
  double conjugate_distortion = 0.0;
  double seed_relative_advance = 0.0;
  double conjugate_relative_advance = 0.0;
  std::string error;
};

/// For each delta of the configured grid: map the carrier detunings,
/// propagate the seed pulse, stimulate the conjugate, reduce to metrics.
/// A failing row is recorded, not fatal.  Rows are ordered by delta and the
/// run is deterministic.
std::vector<SweepRow> run_detuning_sweep(const RunConfig& config);

/// Reference / amplified seed / conjugate traces at one detuning,
/// peak-normalized, with the normalization factors and metrics alongside.
struct TracePairResult {
  double delta_hz = 0.0;
  SampledTrace reference;  // peak-normalized
  SampledTrace seed;
  SampledTrace conjugate;
  double seed_peak_ratio = 0.0;       // peak amplitude / reference peak
  double conjugate_peak_ratio = 0.0;
  AdvancementMetrics seed_metrics;
  AdvancementMetrics conjugate_metrics;
};

TracePairResult run_trace_pair(const RunConfig& config, double delta_hz);

/// Grid search over the sweep deltas for the largest conjugate advancement
/// whose distortion stays within the cap; ties go to the smaller |delta|.
struct SearchResult {
  double delta_hz = 0.0;
  double advancement = 0.0;  // s
  double distortion = 0.0;
};

SearchResult search_max_advance(const RunConfig& config, double distortion_cap);

/// Comment lines shared by the CLI writers: geometry bookkeeping including
/// the seed/conjugate separation implied by the frequency constraint.
std::vector<std::string> geometry_header(const RunConfig& config);

}  // namespace fastlight
