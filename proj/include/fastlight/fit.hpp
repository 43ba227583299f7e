#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fastlight/medium.hpp"

namespace fastlight {

/// One measured point of a gain/absorption spectrum.
struct LineshapeSample {
  double detuning = 0.0;  // rad/s
  double gain = 1.0;      // dimensionless intensity gain, > 0
};

/// Result of a nonlinear least-squares fit.
struct FitResult {
  std::vector<std::string> param_names;  // strength[j] (1/m), hwhm[j], center[j] (rad/s)
  std::vector<double> params;
  std::vector<double> parameter_sigmas;  // one sigma, linearized normal equations
  double residual_rms = 0.0;             // in log-gain units
  int iterations = 0;
  bool converged = false;
  std::vector<std::string> flags;  // e.g. "degenerate component 1"

  MediumChannel to_channel(const MediumChannel& like) const;
};

/// Optional box bounds, one entry per packed parameter; empty = unbounded.
struct FitBounds {
  std::vector<double> lower;
  std::vector<double> upper;
};

/// Model log-gain log G(D) = -2 Im(k(D)) L and its gradient with respect to
/// the packed parameters (strength, hwhm, center per line).
double log_gain_model(const MediumChannel& channel, double detuning);
std::vector<double> log_gain_gradient(const MediumChannel& channel, double detuning);

/// Damped Gauss-Newton (Levenberg-style) fit of {strength_j, hwhm_j,
/// center_j} to the sampled spectrum, minimizing sum (log G_model - log
/// G_data)^2.  Damping grows on rejected steps and shrinks on accepted ones;
/// convergence requires relative residual change < 1e-10 or gradient norm
/// < 1e-12 on two consecutive accepted steps.  Non-convergence within
/// max_iterations returns converged = false; damping beyond 1e12 throws.
FitResult fit_lineshape(const std::vector<LineshapeSample>& samples,
                        const MediumChannel& initial, const FitBounds& bounds = {},
                        int max_iterations = 200);

/// advancement = offset + slope * ln(power / reference_power), closed-form
/// linear least squares with reference_power = max input power.
struct LogLawFit {
  double offset = 0.0;           // s
  double slope = 0.0;            // s per ln(power ratio)
  double reference_power = 0.0;  // same units as the input powers
  double residual_rms = 0.0;     // s
};

LogLawFit fit_log_law(const std::vector<std::pair<double, double>>& points);

}  // namespace fastlight
