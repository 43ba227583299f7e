#pragma once

#include "fastlight/medium.hpp"
#include "fastlight/propagate.hpp"
#include "fastlight/pulse.hpp"

namespace fastlight {

/// Pump/seed/conjugate frequency bookkeeping.  All frequencies are ordinary
/// (Hz).  Energy conservation 2 w_pump = w_seed + w_conjugate fixes the
/// conjugate offset to -seed_offset exactly.
struct FourWMGeometry {
  double pump_detuning = 4.0e8;      // Hz, pump relative to the D1 reference
  double seed_offset = 3.0e9;        // Hz, seed relative to pump
  double two_photon_detuning = 0.0;  // Hz, delta (the sweep variable)
  double coupling = 0.0;             // kappa, conjugate seeding efficiency, >= 0

  double conjugate_offset() const { return -seed_offset; }
  double seed_frequency(double delta_hz) const {
    return pump_detuning + seed_offset + delta_hz;
  }
  void validate() const;
};

/// 2 pump - seed (Hz); the frequency constraint of the mixing process.
double conjugate_frequency(double pump_hz, double seed_hz);

/// Angular carrier detunings seen by the two channels at two-photon detuning
/// delta: the seed moves with +delta off its gain-line center, the conjugate
/// mirrors to -delta off its line system's reference.
struct ChannelDetunings {
  double seed = 0.0;       // rad/s
  double conjugate = 0.0;  // rad/s
};

ChannelDetunings channel_detunings(const FourWMGeometry& geometry, double delta_hz);

/// Uncoupled stimulated-generation model: the conjugate inherits the seed
/// envelope (spectrally conjugated, encoding phase conjugation of the
/// generated field), scaled by kappa, then filtered by the conjugate
/// channel's transfer.  `conjugate_channel` must already be shifted to the
/// conjugate carrier.  The reference is the unpropagated seed input.
PropagationResult stimulate_conjugate(const SampledTrace& seed_input,
                                      const FourWMGeometry& geometry,
                                      const MediumChannel& conjugate_channel,
                                      double wraparound_threshold = 1e-6);

}  // namespace fastlight
