#pragma once

#include <cstdint>

#include "fastlight/pulse.hpp"

namespace fastlight {

/// Sub-sample peak location (3-point parabolic interpolation around the
/// argmax).  `tied` is set when several samples share the global maximum; the
/// earliest is used.
struct PeakEstimate {
  double time = 0.0;
  bool tied = false;
};

PeakEstimate estimate_peak(const SampledTrace& trace);
double peak_time(const SampledTrace& trace);

/// Full width at half maximum of the trace samples, by linear interpolation
/// between the bracketing samples on each side of the peak.
double fwhm(const SampledTrace& trace);

/// Derived comparison of an output trace against its vacuum reference.
/// Traces hold amplitudes; "power" quantities square them.
struct AdvancementMetrics {
  double peak_advance = 0.0;      // s, positive = output peak exits earlier
  double relative_advance = 0.0;  // peak_advance / fwhm_ref
  double intensity_gain = 0.0;    // peak power ratio output/reference
  double fwhm_out = 0.0;          // s
  double fwhm_ref = 0.0;          // s
  double distortion = 0.0;        // peak-aligned, peak-normalized power RMS
  double group_velocity = 0.0;    // m/s, signed; from peak_advance and length
  bool tie_flag = false;          // a peak estimate hit the plateau tie rule
};

/// v_g = L / (L/c - peak_advance).  Within 1e-15 s of the pole the signal
/// value +infinity is returned.
double group_velocity_from_advance(double peak_advance, double length);

/// Metrics for an output/reference pair sharing a grid; `length` is the
/// medium length used for the group velocity.
AdvancementMetrics advancement(const SampledTrace& output, const SampledTrace& reference,
                               double length);

/// advancement() plus a one-sigma uncertainty on peak_advance from a
/// residual-noise bootstrap: the noise level is estimated from each trace's
/// pre-pulse baseline and re-injected `n_boot` times with a fixed seed.
struct UncertainAdvancement {
  AdvancementMetrics metrics;
  double advance_sigma = 0.0;       // s, one sigma
  double noise_sigma_output = 0.0;  // estimated baseline noise levels
  double noise_sigma_reference = 0.0;
};

UncertainAdvancement advancement_with_uncertainty(const SampledTrace& output,
                                                  const SampledTrace& reference,
                                                  double length, int n_boot = 200,
                                                  std::uint64_t seed = 0x5eedf00d);

}  // namespace fastlight
