#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace fastlight {

enum class PulseShape { gaussian };

/// Input pulse definition.  `fwhm` is the full width at half maximum of the
/// amplitude envelope.
struct PulseSpec {
  PulseShape shape = PulseShape::gaussian;
  double fwhm = 0.0;           // s, > 0
  double peak_amplitude = 1.0;  // linear units, > 0
  double center_time = 0.0;    // s

  void validate() const;
};

/// Uniform time grid.  n_points must be a power of two in [2^10, 2^22].
struct GridSpec {
  double window = 0.0;      // s, total span
  std::size_t n_points = 0;

  double dt() const { return window / static_cast<double>(n_points); }
  void validate() const;
};

/// Uniformly sampled real envelope (linear amplitude; detected power is the
/// square, applied at the metrics/reporting boundary).
struct SampledTrace {
  double t_start = 0.0;  // s
  double dt = 0.0;       // s, > 0
  std::vector<double> samples;

  double time_at(std::size_t i) const { return t_start + dt * static_cast<double>(i); }
  void validate() const;
};

/// Discrete spectrum of a trace, bins ordered from negative to positive
/// detuning: D_j = f_start + j df.  `t_ref` carries the originating trace's
/// time origin so the pair is exactly invertible.
///
/// Transform convention: forward kernel exp(+i D t), inverse exp(-i D t);
/// under it a transfer factor exp(+i D tau) delays the envelope by tau, and
/// delaying a trace by m samples multiplies bin j by exp(+i D_j m dt).
struct Spectrum {
  double f_start = 0.0;  // rad/s
  double df = 0.0;       // rad/s, > 0
  double t_ref = 0.0;    // s
  std::vector<std::complex<double>> samples;

  double detuning_at(std::size_t j) const { return f_start + df * static_cast<double>(j); }
};

bool is_power_of_two(std::size_t n);

/// Gaussian envelope A(t) = peak * exp(-4 ln2 (t - t0)^2 / fwhm^2) sampled on
/// the grid, t_start = 0.  Requires the pulse to fit: center +- 4 fwhm inside
/// the window (window/fwhm violation otherwise).
SampledTrace synthesize(const PulseSpec& spec, const GridSpec& grid);

/// DFT of a power-of-two-length trace, X_j = dt * sum_k x_k exp(+i D_j k dt).
Spectrum to_spectrum(const SampledTrace& trace);

/// Inverse DFT back to a real trace (real part of the complex envelope).
SampledTrace to_trace(const Spectrum& spectrum);

/// Inverse DFT keeping the complex envelope; to_trace is this plus Re().
std::vector<std::complex<double>> to_field(const Spectrum& spectrum);

}  // namespace fastlight
