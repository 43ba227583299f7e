#pragma once

#include <complex>
#include <utility>
#include <vector>

namespace fastlight {

// Complex wavenumber model
// ------------------------
// A channel's wavenumber deviation from vacuum is a sum of signed Lorentzian
// lines,
//
//   k(D) = sum_j (1/2) * strength_j * hwhm_j / ((D - center_j) + i hwhm_j)   [1/m]
//
// where D is the angular detuning of the field from the channel carrier.
//
// Sign convention (normative for the whole library): `strength` is positive
// for gain and negative for absorption, so that an isolated line at its own
// center gives an intensity gain of exp(strength * length).  Config files
// use the opposite, absorption-positive sign (alpha < 0 meaning gain, as the
// coefficients are usually quoted); they are negated once at parse time and
// restored on serialization.  Group delay follows from the closed-form
// derivative dk/dD and is reported relative to a c-propagating reference, so
// a positive value is slow light and a negative value is fast light.

/// One signed Lorentzian line.
struct LineComponent {
  double center_detuning = 0.0;  // rad/s, offset from the channel carrier
  double hwhm = 0.0;             // rad/s, half width at half maximum, > 0
  double strength = 0.0;         // 1/m, signed, finite and nonzero

  void validate() const;
};

/// One optical frequency channel: background index, cell length, and the
/// lines the envelope sees.  An empty line list is a vacuum channel.
struct MediumChannel {
  double background_index = 1.0;  // n0, >= 1 - 1e-6 (dilute vapor)
  double length = 0.0;            // m, > 0
  std::vector<LineComponent> lines;

  void validate() const;
};

/// Pointwise dispersion summary at one detuning.
struct DispersionSample {
  double detuning = 0.0;                     // rad/s
  std::complex<double> k_complex{0.0, 0.0};  // line contribution to k, 1/m
  double intensity_gain = 1.0;               // exp(-2 Im(k) L)
  double group_delay = 0.0;                  // s, relative to vacuum
};

/// Line contribution to the complex wavenumber at angular detuning
/// `detuning`.  The background term (omega n0 / c) is excluded; propagation
/// handles the background index relative to vacuum.
std::complex<double> evaluate_k(const MediumChannel& channel, double detuning);

/// Group delay relative to a c-propagating reference, from the closed-form
/// Lorentzian derivatives plus the (n0 - 1) L / c background term.
/// Positive = slow, negative = fast.
double group_delay_analytic(const MediumChannel& channel, double detuning);

/// Dispersion samples over a strictly increasing detuning grid.
std::vector<DispersionSample> gain_spectrum(const MediumChannel& channel,
                                            const std::vector<double>& detuning_grid);

/// (detuning, advancement) pairs with advancement = -group_delay_analytic.
std::vector<std::pair<double, double>> advancement_curve(
    const MediumChannel& channel, const std::vector<double>& detuning_grid);

/// The same channel seen by a field at carrier offset `carrier_detuning` in
/// the original channel frame: all line centers are shifted so that envelope
/// detuning 0 coincides with the carrier.
MediumChannel shifted_to_carrier(const MediumChannel& channel, double carrier_detuning);

}  // namespace fastlight
