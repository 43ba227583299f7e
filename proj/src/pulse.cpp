#include "fastlight/pulse.hpp"

#include <fftw3.h>

#include <cmath>
#include <sstream>

#include "fastlight/errors.hpp"
#include "fastlight/units.hpp"

namespace fastlight {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void PulseSpec::validate() const {
  if (!std::isfinite(fwhm) || !(fwhm > 0.0))
    throw ValidationError("pulse fwhm must be positive");
  if (!std::isfinite(peak_amplitude) || !(peak_amplitude > 0.0))
    throw ValidationError("pulse peak_amplitude must be positive");
  if (!std::isfinite(center_time))
    throw ValidationError("pulse center_time must be finite");
}

void GridSpec::validate() const {
  if (!std::isfinite(window) || !(window > 0.0))
    throw ValidationError("grid window must be positive");
  if (!is_power_of_two(n_points) || n_points < (1u << 10) || n_points > (1u << 22))
    throw ValidationError("grid n_points must be a power of two in [2^10, 2^22]");
}

void SampledTrace::validate() const {
  if (!std::isfinite(dt) || !(dt > 0.0)) throw ValidationError("trace dt must be positive");
  if (samples.size() < 16) throw ValidationError("trace must have at least 16 samples");
  for (double s : samples)
    if (!std::isfinite(s)) throw ValidationError("trace samples must be finite");
}

SampledTrace synthesize(const PulseSpec& spec, const GridSpec& grid) {
  spec.validate();
  grid.validate();
  if (grid.window < 8.0 * spec.fwhm || spec.center_time - 4.0 * spec.fwhm < 0.0 ||
      spec.center_time + 4.0 * spec.fwhm > grid.window) {
    std::ostringstream msg;
    msg << "window/fwhm violation: need window >= 8 x fwhm with the pulse center "
        << "at least 4 fwhm from both edges (window " << grid.window << " s, fwhm "
        << spec.fwhm << " s, center " << spec.center_time << " s)";
    throw ValidationError(msg.str());
  }

  SampledTrace trace;
  trace.t_start = 0.0;
  trace.dt = grid.dt();
  trace.samples.resize(grid.n_points);
  const double four_ln2 = 4.0 * std::numbers::ln2;
  for (std::size_t k = 0; k < grid.n_points; ++k) {
    const double u = (trace.time_at(k) - spec.center_time) / spec.fwhm;
    trace.samples[k] = spec.peak_amplitude * std::exp(-four_ln2 * u * u);
  }
  return trace;
}

namespace {

// One unnormalized c2c transform.  FFTW_UNALIGNED keeps the chosen kernel
// independent of buffer alignment so identical inputs give identical bits.
void run_fftw(std::vector<std::complex<double>>& data, int sign) {
  const int n = static_cast<int>(data.size());
  auto* raw = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan = fftw_plan_dft_1d(n, raw, raw, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!plan) throw NumericError("fftw plan creation failed");
  fftw_execute(plan);
  fftw_destroy_plan(plan);
}

}  // namespace

Spectrum to_spectrum(const SampledTrace& trace) {
  trace.validate();
  const std::size_t n = trace.samples.size();
  if (!is_power_of_two(n))
    throw ValidationError("trace length must be a power of two for the DFT");

  // X_j = dt sum_k x_k exp(+i (j - n/2) (2 pi / n) k)
  //     = dt * BackwardFFT[x_k (-1)^k]_j
  std::vector<std::complex<double>> work(n);
  for (std::size_t k = 0; k < n; ++k)
    work[k] = (k % 2 == 0 ? trace.samples[k] : -trace.samples[k]);
  run_fftw(work, FFTW_BACKWARD);

  Spectrum spec;
  spec.df = two_pi / (static_cast<double>(n) * trace.dt);
  spec.f_start = -spec.df * static_cast<double>(n / 2);
  spec.t_ref = trace.t_start;
  spec.samples.resize(n);
  for (std::size_t j = 0; j < n; ++j) spec.samples[j] = trace.dt * work[j];
  return spec;
}

std::vector<std::complex<double>> to_field(const Spectrum& spectrum) {
  const std::size_t n = spectrum.samples.size();
  if (!is_power_of_two(n) || n < 16)
    throw ValidationError("spectrum length must be a power of two (>= 16)");
  if (!(spectrum.df > 0.0)) throw ValidationError("spectrum df must be positive");

  // x_k = (df / 2 pi) (-1)^k ForwardFFT[X_j]_k
  std::vector<std::complex<double>> work = spectrum.samples;
  run_fftw(work, FFTW_FORWARD);
  const double scale = spectrum.df / two_pi;
  for (std::size_t k = 0; k < n; ++k) {
    work[k] *= scale;
    if (k % 2 != 0) work[k] = -work[k];
  }
  return work;
}

SampledTrace to_trace(const Spectrum& spectrum) {
  const auto field = to_field(spectrum);
  SampledTrace trace;
  trace.dt = two_pi / (spectrum.df * static_cast<double>(field.size()));
  trace.t_start = spectrum.t_ref;
  trace.samples.resize(field.size());
  for (std::size_t k = 0; k < field.size(); ++k) trace.samples[k] = field[k].real();
  return trace;
}

}  // namespace fastlight
