#include "fastlight/medium.hpp"

#include <cmath>

#include "fastlight/errors.hpp"
#include "fastlight/units.hpp"

namespace fastlight {

void LineComponent::validate() const {
  if (!std::isfinite(center_detuning))
    throw ValidationError("line center_detuning must be finite");
  if (!std::isfinite(hwhm) || !(hwhm > 0.0))
    throw ValidationError("line hwhm must be positive");
  if (!std::isfinite(strength) || strength == 0.0)
    throw ValidationError("line strength must be finite and nonzero");
}

void MediumChannel::validate() const {
  if (!std::isfinite(background_index) || background_index < 1.0 - 1e-6)
    throw ValidationError("background_index must be >= 1 - 1e-6");
  if (!std::isfinite(length) || !(length > 0.0))
    throw ValidationError("channel length must be positive");
  for (const auto& line : lines) line.validate();
}

std::complex<double> evaluate_k(const MediumChannel& channel, double detuning) {
  std::complex<double> k{0.0, 0.0};
  for (const auto& line : channel.lines) {
    const std::complex<double> denom(detuning - line.center_detuning, line.hwhm);
    k += 0.5 * line.strength * line.hwhm / denom;
  }
  return k;
}

double group_delay_analytic(const MediumChannel& channel, double detuning) {
  double slope = (channel.background_index - 1.0) / speed_of_light;  // Re dk/dD, s/m
  for (const auto& line : channel.lines) {
    const std::complex<double> denom(detuning - line.center_detuning, line.hwhm);
    slope += std::real(-0.5 * line.strength * line.hwhm / (denom * denom));
  }
  return channel.length * slope;
}

static void check_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw ValidationError("empty grid");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw ValidationError("detuning grid must be strictly increasing");
}

std::vector<DispersionSample> gain_spectrum(const MediumChannel& channel,
                                            const std::vector<double>& detuning_grid) {
  check_grid(detuning_grid);
  std::vector<DispersionSample> out;
  out.reserve(detuning_grid.size());
  for (double d : detuning_grid) {
    DispersionSample s;
    s.detuning = d;
    s.k_complex = evaluate_k(channel, d);
    s.intensity_gain = std::exp(-2.0 * s.k_complex.imag() * channel.length);
    s.group_delay = group_delay_analytic(channel, d);
    out.push_back(s);
  }
  return out;
}

std::vector<std::pair<double, double>> advancement_curve(
    const MediumChannel& channel, const std::vector<double>& detuning_grid) {
  check_grid(detuning_grid);
  std::vector<std::pair<double, double>> out;
  out.reserve(detuning_grid.size());
  for (double d : detuning_grid)
    out.emplace_back(d, -group_delay_analytic(channel, d));
  return out;
}

MediumChannel shifted_to_carrier(const MediumChannel& channel, double carrier_detuning) {
  MediumChannel shifted = channel;
  for (auto& line : shifted.lines) line.center_detuning -= carrier_detuning;
  return shifted;
}

}  // namespace fastlight
