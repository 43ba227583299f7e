#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fastlight/errors.hpp"
#include "fastlight/metrics.hpp"
#include "fastlight/units.hpp"

using namespace fastlight;

namespace {

SampledTrace gaussian_at(double center, double fwhm = 2e-7, double window = 4e-6,
                         std::size_t n = 4096, double peak = 1.0) {
  PulseSpec p;
  p.fwhm = fwhm;
  p.center_time = center;
  p.peak_amplitude = peak;
  GridSpec g;
  g.window = window;
  g.n_points = n;
  return synthesize(p, g);
}

}  // namespace

TEST_CASE("peak time of a centered gaussian") {
  const auto trace = gaussian_at(2e-6);
  CHECK(std::abs(peak_time(trace) - 2e-6) <= trace.dt / 10.0);
}

TEST_CASE("peak time resolves sub-sample shifts") {
  const auto a = gaussian_at(2e-6);
  const auto b = gaussian_at(2e-6 + 13.7e-9);  // not a multiple of dt
  CHECK(std::abs(peak_time(b) - peak_time(a) - 13.7e-9) <= a.dt / 10.0);
}

TEST_CASE("plateau ties break to the earliest sample and are flagged") {
  SampledTrace t;
  t.dt = 1e-9;
  t.samples.assign(64, 0.0);
  t.samples[20] = 1.0;
  t.samples[40] = 1.0;
  const auto est = estimate_peak(t);
  CHECK(est.tied);
  CHECK(est.time == doctest::Approx(20e-9).epsilon(1e-12));
}

TEST_CASE("peak on the window edge is an error") {
  SampledTrace t;
  t.dt = 1e-9;
  t.samples.assign(32, 0.0);
  for (std::size_t i = 0; i < 32; ++i) t.samples[i] = 1.0 - 0.01 * static_cast<double>(i);
  CHECK_THROWS_WITH_AS(estimate_peak(t), doctest::Contains("peak at boundary"),
                       NumericError);
}

TEST_CASE("fwhm of the synthesized pulse, scale invariant") {
  const auto a = gaussian_at(2e-6);
  CHECK(std::abs(fwhm(a) - 2e-7) <= a.dt);
  const auto b = gaussian_at(2e-6, 2e-7, 4e-6, 4096, 7.5);
  CHECK(fwhm(b) == fwhm(a));
}

TEST_CASE("missing half-maximum crossing is an unbounded pulse") {
  SampledTrace t;
  t.dt = 1e-9;
  t.samples.assign(64, 0.8);
  for (std::size_t i = 0; i < 20; ++i) t.samples[i] = 0.1 + 0.03 * static_cast<double>(i);
  t.samples[30] = 1.0;  // unique max, right side never drops below half
  CHECK_THROWS_WITH_AS(fwhm(t), doctest::Contains("unbounded pulse"), NumericError);
}

TEST_CASE("identical traces give null metrics") {
  const auto trace = gaussian_at(2e-6);
  const auto m = advancement(trace, trace, 0.017);
  CHECK(m.peak_advance == 0.0);
  CHECK(m.intensity_gain == 1.0);
  CHECK(m.distortion == 0.0);
  CHECK(m.relative_advance == 0.0);
  CHECK(m.group_velocity == doctest::Approx(speed_of_light).epsilon(1e-12));
}

TEST_CASE("a 50 ns advance on a 200 ns pulse is a 25% relative advance") {
  const auto ref = gaussian_at(2e-6);
  const auto out = gaussian_at(2e-6 - 50e-9);
  const auto m = advancement(out, ref, 0.017);
  CHECK(m.peak_advance == doctest::Approx(50e-9).epsilon(1e-6));
  CHECK(m.relative_advance == doctest::Approx(0.25).epsilon(0.01));
  // group velocity lands near -c/880
  CHECK(m.group_velocity < 0.0);
  CHECK(m.group_velocity ==
        doctest::Approx(-speed_of_light / 880.0).epsilon(0.005));
}

TEST_CASE("group velocity mapping and its inverse") {
  const double L = 0.017;
  CHECK(group_velocity_from_advance(0.0, L) == speed_of_light);
  const double half_pole = L / speed_of_light / 2.0;
  CHECK(group_velocity_from_advance(half_pole, L) ==
        doctest::Approx(2.0 * speed_of_light).epsilon(1e-12));

  const double v = group_velocity_from_advance(50e-9, L);
  CHECK(v == doctest::Approx(-3.40e5).epsilon(0.005));
  // inverse: the advance that reproduces this velocity is 50 ns
  const double advance_back = L / speed_of_light - L / v;
  CHECK(advance_back == doctest::Approx(50e-9).epsilon(1e-12));

  CHECK(std::isinf(group_velocity_from_advance(L / speed_of_light, L)));
}

TEST_CASE("time-shift equivariance") {
  const auto ref = gaussian_at(2e-6);
  const auto out = gaussian_at(2e-6 - 37e-9, 2e-7, 4e-6, 4096, 1.4);
  const auto base = advancement(out, ref, 0.017);

  SampledTrace ref2 = ref, out2 = out;
  ref2.t_start += 5.5e-7;
  out2.t_start += 5.5e-7;
  const auto shifted = advancement(out2, ref2, 0.017);
  CHECK(shifted.peak_advance == doctest::Approx(base.peak_advance).epsilon(1e-12));
  CHECK(shifted.intensity_gain == base.intensity_gain);  // samples untouched
  CHECK(shifted.distortion == base.distortion);
  CHECK(shifted.fwhm_out == base.fwhm_out);

  // moving both pulses later by the same amount changes nothing either
  const auto ref3 = gaussian_at(2e-6 + 100e-9);
  const auto out3 = gaussian_at(2e-6 - 37e-9 + 100e-9, 2e-7, 4e-6, 4096, 1.4);
  const auto rolled = advancement(out3, ref3, 0.017);
  CHECK(rolled.peak_advance == doctest::Approx(base.peak_advance).epsilon(1e-4));
}

TEST_CASE("amplitude invariance and gain scaling") {
  const auto ref = gaussian_at(2e-6);
  auto out = gaussian_at(2e-6 - 21e-9);
  const auto base = advancement(out, ref, 0.017);
  for (auto& s : out.samples) s *= 3.0;
  const auto scaled = advancement(out, ref, 0.017);
  CHECK(scaled.peak_advance == doctest::Approx(base.peak_advance).epsilon(1e-12));
  CHECK(scaled.distortion == doctest::Approx(base.distortion).epsilon(1e-9));
  CHECK(scaled.intensity_gain == doctest::Approx(9.0 * base.intensity_gain).epsilon(1e-12));
}

TEST_CASE("advancement sign convention against random shifts") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> shift(-4e-10, 4e-10);
  const double L = 0.017;
  const double pole = L / speed_of_light;  // about 0.057 ns
  const auto ref = gaussian_at(2e-6);
  for (int trial = 0; trial < 24; ++trial) {
    const double s = shift(rng);
    const auto out = gaussian_at(2e-6 - s);
    const auto m = advancement(out, ref, L);
    if (std::abs(m.peak_advance - pole) < 5e-12) continue;  // too close to the pole
    if (m.peak_advance > 0.0) {
      const bool superluminal = m.group_velocity > speed_of_light || m.group_velocity < 0.0;
      CHECK(superluminal);
    } else if (m.peak_advance < 0.0) {
      CHECK(m.group_velocity > 0.0);
      CHECK(m.group_velocity < speed_of_light);
    }
  }
}

TEST_CASE("bootstrap uncertainty on noisy traces") {
  std::mt19937 rng(23);
  std::normal_distribution<double> noise(0.0, 0.01);
  auto ref = gaussian_at(2e-6);
  auto out = gaussian_at(2e-6 - 40e-9);
  for (auto& s : ref.samples) s += noise(rng);
  for (auto& s : out.samples) s += noise(rng);

  const auto result = advancement_with_uncertainty(out, ref, 0.017, 100, 99);
  CHECK(result.noise_sigma_output == doctest::Approx(0.01).epsilon(0.3));
  CHECK(result.advance_sigma > 0.0);
  CHECK(result.advance_sigma < 20e-9);  // under the 40 ns shift itself
  CHECK(result.metrics.peak_advance == doctest::Approx(40e-9).epsilon(0.05));

  // deterministic: same seed, same answer
  const auto again = advancement_with_uncertainty(out, ref, 0.017, 100, 99);
  CHECK(again.advance_sigma == result.advance_sigma);
}

TEST_CASE("noiseless identical traces have zero uncertainty") {
  const auto trace = gaussian_at(2e-6);
  const auto result = advancement_with_uncertainty(trace, trace, 0.017, 50, 1);
  CHECK(result.metrics.peak_advance == 0.0);
  CHECK(result.advance_sigma == 0.0);
}

TEST_CASE("mismatched grids are rejected") {
  const auto a = gaussian_at(2e-6);
  auto b = gaussian_at(2e-6);
  b.t_start = 1e-9;
  CHECK_THROWS_AS(advancement(a, b, 0.017), ValidationError);
}
