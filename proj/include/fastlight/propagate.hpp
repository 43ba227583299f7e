#pragma once

#include <complex>
#include <vector>

#include "fastlight/medium.hpp"
#include "fastlight/pulse.hpp"

namespace fastlight {

/// Output of one propagation: the detected envelope |field|, the unchanged
/// input as the vacuum reference (reference pulses are what the input looks
/// like with the pump blocked), the transfer samples per spectrum bin, and
/// the wraparound guard.
struct PropagationResult {
  SampledTrace output;     // |complex envelope|
  SampledTrace reference;  // input trace, unchanged
  std::vector<std::complex<double>> output_field;     // complex envelope
  std::vector<std::complex<double>> transfer_samples;  // H per bin
  double edge_energy_fraction = 0.0;  // |field|^2 fraction in outer 5% of window
};

/// Relative transfer H(D) = exp(i (k(D) + D (n0 - 1) / c) L).  The common
/// vacuum phase exp(i D L / c) is divided out, so a vacuum channel gives
/// H == 1 and measured delays are relative to a c-propagating reference.
std::vector<std::complex<double>> relative_transfer(const MediumChannel& channel,
                                                    const std::vector<double>& freq_grid);

/// Apply a precomputed transfer to a spectrum and assemble the result.
/// Throws NumericError("window wraparound ...") if more than
/// `wraparound_threshold` of the output energy sits in the outer 5% of the
/// window.
PropagationResult propagate_spectrum(const Spectrum& spectrum,
                                     const std::vector<std::complex<double>>& transfer,
                                     const SampledTrace& reference,
                                     double wraparound_threshold = 1e-6);

/// Propagate a trace through a channel relative to vacuum.
PropagationResult propagate_pulse(const SampledTrace& trace, const MediumChannel& channel,
                                  double wraparound_threshold = 1e-6);

}  // namespace fastlight
