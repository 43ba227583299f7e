#include "fastlight/propagate.hpp"

#include <cmath>
#include <sstream>

#include "fastlight/errors.hpp"
#include "fastlight/units.hpp"

namespace fastlight {

std::vector<std::complex<double>> relative_transfer(const MediumChannel& channel,
                                                    const std::vector<double>& freq_grid) {
  channel.validate();
  const double background_slope = (channel.background_index - 1.0) / speed_of_light;
  std::vector<std::complex<double>> transfer;
  transfer.reserve(freq_grid.size());
  for (double d : freq_grid) {
    if (!std::isfinite(d)) throw ValidationError("frequency grid must be finite");
    const std::complex<double> k = evaluate_k(channel, d) + background_slope * d;
    transfer.push_back(std::exp(std::complex<double>(0.0, 1.0) * k * channel.length));
  }
  return transfer;
}

PropagationResult propagate_spectrum(const Spectrum& spectrum,
                                     const std::vector<std::complex<double>>& transfer,
                                     const SampledTrace& reference,
                                     double wraparound_threshold) {
  if (transfer.size() != spectrum.samples.size())
    throw ValidationError("transfer length must match spectrum length");

  Spectrum filtered = spectrum;
  for (std::size_t j = 0; j < transfer.size(); ++j) filtered.samples[j] *= transfer[j];

  PropagationResult result;
  result.output_field = to_field(filtered);
  result.transfer_samples = transfer;
  result.reference = reference;

  const std::size_t n = result.output_field.size();
  result.output.t_start = reference.t_start;
  result.output.dt = reference.dt;
  result.output.samples.resize(n);
  double total_energy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    result.output.samples[k] = std::abs(result.output_field[k]);
    total_energy += std::norm(result.output_field[k]);
  }

  // Wraparound guard: energy in the outer 5% of the window (2.5% per edge).
  const std::size_t n_edge = n / 40;
  double edge_energy = 0.0;
  for (std::size_t k = 0; k < n_edge; ++k) {
    edge_energy += std::norm(result.output_field[k]);
    edge_energy += std::norm(result.output_field[n - 1 - k]);
  }
  result.edge_energy_fraction = total_energy > 0.0 ? edge_energy / total_energy : 0.0;
  if (result.edge_energy_fraction >= wraparound_threshold) {
    std::ostringstream msg;
    msg << "window wraparound: " << result.edge_energy_fraction
        << " of the output energy sits in the outer 5% of the window "
        << "(threshold " << wraparound_threshold << "); use a larger grid window";
    throw NumericError(msg.str());
  }
  return result;
}

PropagationResult propagate_pulse(const SampledTrace& trace, const MediumChannel& channel,
                                  double wraparound_threshold) {
  const Spectrum spectrum = to_spectrum(trace);
  std::vector<double> grid;
  grid.reserve(spectrum.samples.size());
  for (std::size_t j = 0; j < spectrum.samples.size(); ++j)
    grid.push_back(spectrum.detuning_at(j));
  return propagate_spectrum(spectrum, relative_transfer(channel, grid), trace,
                            wraparound_threshold);
}

}  // namespace fastlight
