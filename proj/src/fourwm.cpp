#include "fastlight/fourwm.hpp"

#include <cmath>

#include "fastlight/errors.hpp"
#include "fastlight/units.hpp"

namespace fastlight {

void FourWMGeometry::validate() const {
  if (!std::isfinite(pump_detuning) || !std::isfinite(seed_offset) ||
      !std::isfinite(two_photon_detuning))
    throw ValidationError("geometry frequencies must be finite");
  if (!std::isfinite(coupling) || coupling < 0.0)
    throw ValidationError("geometry kappa must be >= 0");
}

double conjugate_frequency(double pump_hz, double seed_hz) {
  return 2.0 * pump_hz - seed_hz;
}

ChannelDetunings channel_detunings(const FourWMGeometry& geometry, double delta_hz) {
  geometry.validate();
  ChannelDetunings d;
  d.seed = hz_to_angular(delta_hz);
  d.conjugate = -hz_to_angular(delta_hz);  // raising the seed lowers the conjugate
  return d;
}

PropagationResult stimulate_conjugate(const SampledTrace& seed_input,
                                      const FourWMGeometry& geometry,
                                      const MediumChannel& conjugate_channel,
                                      double wraparound_threshold) {
  geometry.validate();
  Spectrum spectrum = to_spectrum(seed_input);
  const std::size_t n = spectrum.samples.size();

  // Mirror-conjugate the envelope spectrum (D -> -D with conjugation); for a
  // real input envelope this is the identity, by Hermitian symmetry.
  std::vector<std::complex<double>> mirrored(n);
  mirrored[0] = std::conj(spectrum.samples[0]);
  for (std::size_t j = 1; j < n; ++j) mirrored[j] = std::conj(spectrum.samples[n - j]);
  for (std::size_t j = 0; j < n; ++j) spectrum.samples[j] = geometry.coupling * mirrored[j];

  std::vector<double> grid;
  grid.reserve(n);
  for (std::size_t j = 0; j < n; ++j) grid.push_back(spectrum.detuning_at(j));
  return propagate_spectrum(spectrum, relative_transfer(conjugate_channel, grid),
                            seed_input, wraparound_threshold);
}

}  // namespace fastlight
