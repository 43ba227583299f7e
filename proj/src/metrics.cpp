#include "fastlight/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "fastlight/errors.hpp"
#include "fastlight/units.hpp"

namespace fastlight {

namespace {

std::size_t argmax_earliest(const std::vector<double>& samples, bool* tied) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (samples[i] > samples[best]) best = i;
  if (tied) {
    *tied = false;
    for (std::size_t i = best + 1; i < samples.size(); ++i)
      if (samples[i] == samples[best]) {
        *tied = true;
        break;
      }
  }
  return best;
}

// Linear interpolation of samples at fractional index u (clamped).
double sample_at(const std::vector<double>& samples, double u) {
  if (u <= 0.0) return samples.front();
  const double last = static_cast<double>(samples.size() - 1);
  if (u >= last) return samples.back();
  const auto i = static_cast<std::size_t>(u);
  const double frac = u - static_cast<double>(i);
  return samples[i] + frac * (samples[i + 1] - samples[i]);
}

}  // namespace

PeakEstimate estimate_peak(const SampledTrace& trace) {
  trace.validate();
  PeakEstimate est;
  const std::size_t i = argmax_earliest(trace.samples, &est.tied);
  if (i == 0 || i + 1 == trace.samples.size())
    throw NumericError("peak at boundary: trace maximum lies on a window edge");

  const double ym = trace.samples[i - 1];
  const double y0 = trace.samples[i];
  const double yp = trace.samples[i + 1];
  const double curvature = ym - 2.0 * y0 + yp;
  double offset = 0.0;
  if (curvature < 0.0) offset = 0.5 * (ym - yp) / curvature;
  est.time = trace.time_at(i) + offset * trace.dt;
  return est;
}

double peak_time(const SampledTrace& trace) { return estimate_peak(trace).time; }

double fwhm(const SampledTrace& trace) {
  trace.validate();
  const std::size_t i = argmax_earliest(trace.samples, nullptr);
  const double half = 0.5 * trace.samples[i];

  double left = -1.0, right = -1.0;
  for (std::size_t j = i; j-- > 0;) {
    if (trace.samples[j] < half) {
      const double frac = (half - trace.samples[j]) / (trace.samples[j + 1] - trace.samples[j]);
      left = static_cast<double>(j) + frac;
      break;
    }
  }
  for (std::size_t j = i + 1; j < trace.samples.size(); ++j) {
    if (trace.samples[j] < half) {
      const double frac = (trace.samples[j - 1] - half) / (trace.samples[j - 1] - trace.samples[j]);
      right = static_cast<double>(j - 1) + frac;
      break;
    }
  }
  if (left < 0.0 || right < 0.0)
    throw NumericError("unbounded pulse: no half-maximum crossing on one side");
  return (right - left) * trace.dt;
}

double group_velocity_from_advance(double peak_advance, double length) {
  if (!(length > 0.0)) throw ValidationError("length must be positive");
  const double denom = length / speed_of_light - peak_advance;
  if (std::abs(denom) < 1e-15) return std::numeric_limits<double>::infinity();
  return length / denom;
}

AdvancementMetrics advancement(const SampledTrace& output, const SampledTrace& reference,
                               double length) {
  if (output.samples.size() != reference.samples.size() || output.dt != reference.dt ||
      output.t_start != reference.t_start)
    throw ValidationError("output and reference traces must share a grid");

  const PeakEstimate peak_out = estimate_peak(output);
  const PeakEstimate peak_ref = estimate_peak(reference);

  AdvancementMetrics m;
  m.tie_flag = peak_out.tied || peak_ref.tied;
  m.peak_advance = peak_ref.time - peak_out.time;
  m.fwhm_out = fwhm(output);
  m.fwhm_ref = fwhm(reference);
  m.relative_advance = m.peak_advance / m.fwhm_ref;

  const double max_out = *std::max_element(output.samples.begin(), output.samples.end());
  const double max_ref = *std::max_element(reference.samples.begin(), reference.samples.end());
  m.intensity_gain = (max_out * max_out) / (max_ref * max_ref);

  // Peak-aligned, peak-normalized power RMS over the region where the
  // reference power exceeds 1% of its own peak.
  double sum_sq = 0.0;
  std::size_t count = 0;
  const double shift_idx = m.peak_advance / reference.dt;
  for (std::size_t k = 0; k < reference.samples.size(); ++k) {
    const double p_ref = (reference.samples[k] / max_ref) * (reference.samples[k] / max_ref);
    if (p_ref <= 0.01) continue;
    const double a_out = sample_at(output.samples, static_cast<double>(k) - shift_idx) / max_out;
    const double diff = a_out * a_out - p_ref;
    sum_sq += diff * diff;
    ++count;
  }
  m.distortion = count > 0 ? std::sqrt(sum_sq / static_cast<double>(count)) : 0.0;

  m.group_velocity = group_velocity_from_advance(m.peak_advance, length);
  return m;
}

UncertainAdvancement advancement_with_uncertainty(const SampledTrace& output,
                                                  const SampledTrace& reference,
                                                  double length, int n_boot,
                                                  std::uint64_t seed) {
  if (n_boot < 2) throw ValidationError("bootstrap needs at least 2 replicates");

  UncertainAdvancement result;
  result.metrics = advancement(output, reference, length);

  // Baseline: the leading run of samples before the trace first exceeds 10%
  // of its maximum, capped at the first quarter of the window.
  const auto baseline_sigma = [](const SampledTrace& trace) {
    const double peak = *std::max_element(trace.samples.begin(), trace.samples.end());
    std::size_t end = 0;
    const std::size_t cap = std::max<std::size_t>(trace.samples.size() / 4, 16);
    while (end < cap && std::abs(trace.samples[end]) < 0.1 * peak) ++end;
    if (end < 16) end = std::min<std::size_t>(16, trace.samples.size());
    double mean = 0.0;
    for (std::size_t i = 0; i < end; ++i) mean += trace.samples[i];
    mean /= static_cast<double>(end);
    double var = 0.0;
    for (std::size_t i = 0; i < end; ++i) {
      const double d = trace.samples[i] - mean;
      var += d * d;
    }
    return std::sqrt(var / static_cast<double>(end - 1));
  };
  result.noise_sigma_output = baseline_sigma(output);
  result.noise_sigma_reference = baseline_sigma(reference);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> unit(0.0, 1.0);
  std::vector<double> advances;
  advances.reserve(static_cast<std::size_t>(n_boot));
  SampledTrace out_rep = output, ref_rep = reference;
  for (int rep = 0; rep < n_boot; ++rep) {
    for (std::size_t k = 0; k < output.samples.size(); ++k) {
      out_rep.samples[k] = output.samples[k] + result.noise_sigma_output * unit(rng);
      ref_rep.samples[k] = reference.samples[k] + result.noise_sigma_reference * unit(rng);
    }
    try {
      advances.push_back(estimate_peak(ref_rep).time - estimate_peak(out_rep).time);
    } catch (const NumericError&) {
      // a replicate that pushes the peak onto the boundary is skipped
    }
  }
  if (advances.size() < 2) {
    result.advance_sigma = 0.0;
    return result;
  }
  double mean = 0.0;
  for (double a : advances) mean += a;
  mean /= static_cast<double>(advances.size());
  double var = 0.0;
  for (double a : advances) var += (a - mean) * (a - mean);
  result.advance_sigma = std::sqrt(var / static_cast<double>(advances.size() - 1));
  return result;
}

}  // namespace fastlight
