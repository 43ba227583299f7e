#include "fastlight/fit.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>

#include "fastlight/errors.hpp"

namespace fastlight {

namespace {

std::vector<double> pack(const MediumChannel& channel) {
  std::vector<double> p;
  p.reserve(3 * channel.lines.size());
  for (const auto& line : channel.lines) {
    p.push_back(line.strength);
    p.push_back(line.hwhm);
    p.push_back(line.center_detuning);
  }
  return p;
}

MediumChannel unpack(const std::vector<double>& p, const MediumChannel& like) {
  MediumChannel ch = like;
  for (std::size_t j = 0; j < ch.lines.size(); ++j) {
    ch.lines[j].strength = p[3 * j];
    ch.lines[j].hwhm = p[3 * j + 1];
    ch.lines[j].center_detuning = p[3 * j + 2];
  }
  return ch;
}

}  // namespace

MediumChannel FitResult::to_channel(const MediumChannel& like) const {
  return unpack(params, like);
}

double log_gain_model(const MediumChannel& channel, double detuning) {
  // log G = L sum_j strength_j hwhm_j^2 / ((D - c_j)^2 + hwhm_j^2)
  double sum = 0.0;
  for (const auto& line : channel.lines) {
    const double x = detuning - line.center_detuning;
    sum += line.strength * line.hwhm * line.hwhm / (x * x + line.hwhm * line.hwhm);
  }
  return channel.length * sum;
}

std::vector<double> log_gain_gradient(const MediumChannel& channel, double detuning) {
  std::vector<double> grad(3 * channel.lines.size());
  const double L = channel.length;
  for (std::size_t j = 0; j < channel.lines.size(); ++j) {
    const auto& line = channel.lines[j];
    const double x = detuning - line.center_detuning;
    const double g = line.hwhm;
    const double denom = x * x + g * g;
    grad[3 * j] = L * g * g / denom;                                   // d/d strength
    grad[3 * j + 1] = L * line.strength * 2.0 * g * x * x / (denom * denom);  // d/d hwhm
    grad[3 * j + 2] = L * line.strength * g * g * 2.0 * x / (denom * denom);  // d/d center
  }
  return grad;
}

FitResult fit_lineshape(const std::vector<LineshapeSample>& samples,
                        const MediumChannel& initial, const FitBounds& bounds,
                        int max_iterations) {
  initial.validate();
  if (initial.lines.empty()) throw ValidationError("fit needs at least one line");
  const std::size_t n_params = 3 * initial.lines.size();
  if (samples.size() < 4 * n_params)
    throw ValidationError("fit needs at least 4x more samples than free parameters");
  for (const auto& s : samples)
    if (!(s.gain > 0.0) || !std::isfinite(s.gain) || !std::isfinite(s.detuning))
      throw ValidationError("lineshape samples must have finite detuning and gain > 0");

  const bool bounded = !bounds.lower.empty() || !bounds.upper.empty();
  if (bounded && (bounds.lower.size() != n_params || bounds.upper.size() != n_params))
    throw ValidationError("bounds must have one entry per packed parameter");
  const auto in_bounds = [&](const std::vector<double>& p) {
    if (!bounded) return true;
    for (std::size_t i = 0; i < p.size(); ++i)
      if (p[i] < bounds.lower[i] || p[i] > bounds.upper[i]) return false;
    return true;
  };

  std::vector<double> p = pack(initial);
  if (!in_bounds(p)) throw ValidationError("initial parameters lie outside the bounds");

  const std::size_t n = samples.size();
  Eigen::VectorXd residual(n);
  Eigen::MatrixXd jacobian(n, n_params);

  const auto evaluate = [&](const std::vector<double>& params, Eigen::VectorXd& r,
                            Eigen::MatrixXd* J) {
    const MediumChannel ch = unpack(params, initial);
    for (std::size_t i = 0; i < n; ++i) {
      r(static_cast<Eigen::Index>(i)) =
          log_gain_model(ch, samples[i].detuning) - std::log(samples[i].gain);
      if (J) {
        const auto grad = log_gain_gradient(ch, samples[i].detuning);
        for (std::size_t c = 0; c < n_params; ++c)
          (*J)(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = grad[c];
      }
    }
    return 0.5 * r.squaredNorm();
  };

  // A Lorentzian with hwhm <= 0 is outside the model; keep trial steps away.
  const auto well_formed = [&](const std::vector<double>& params) {
    for (std::size_t j = 0; j < initial.lines.size(); ++j)
      if (!(params[3 * j + 1] > 0.0)) return false;
    return true;
  };

  FitResult result;
  double cost = evaluate(p, residual, &jacobian);
  double lambda = 1e-3;
  int consecutive_small = 0;

  for (result.iterations = 1; result.iterations <= max_iterations; ++result.iterations) {
    const Eigen::VectorXd gradient = jacobian.transpose() * residual;
    if (gradient.lpNorm<Eigen::Infinity>() < 1e-12) {
      result.converged = true;
      break;
    }

    const Eigen::MatrixXd normal = jacobian.transpose() * jacobian;
    Eigen::MatrixXd damped = normal;
    for (Eigen::Index i = 0; i < damped.rows(); ++i) {
      const double d = normal(i, i);
      damped(i, i) += lambda * (d > 0.0 ? d : 1.0);
    }
    const Eigen::VectorXd step = damped.ldlt().solve(-gradient);

    bool usable = step.allFinite();
    std::vector<double> p_try = p;
    if (usable) {
      for (std::size_t i = 0; i < n_params; ++i) p_try[i] += step(static_cast<Eigen::Index>(i));
      usable = well_formed(p_try) && in_bounds(p_try);
    }

    double cost_try = 0.0;
    if (usable) {
      Eigen::VectorXd r_try(n);
      cost_try = evaluate(p_try, r_try, nullptr);
      usable = std::isfinite(cost_try) && cost_try <= cost;
    }

    if (!usable) {
      lambda *= 8.0;
      consecutive_small = 0;
      if (lambda > 1e12)
        throw NumericError("lineshape fit: damping exceeded 1e12 (singular normal matrix)");
      continue;
    }

    const double rel_change = (cost - cost_try) / std::max(cost, 1e-300);
    p = p_try;
    cost = evaluate(p, residual, &jacobian);
    lambda = std::max(lambda / 4.0, 1e-12);

    const double grad_norm =
        (jacobian.transpose() * residual).lpNorm<Eigen::Infinity>();
    if (rel_change < 1e-10 || grad_norm < 1e-12)
      ++consecutive_small;
    else
      consecutive_small = 0;
    if (consecutive_small >= 2) {
      result.converged = true;
      break;
    }
  }
  if (result.iterations > max_iterations) result.iterations = max_iterations;

  result.params = p;
  result.param_names.clear();
  for (std::size_t j = 0; j < initial.lines.size(); ++j) {
    std::ostringstream s, g, c;
    s << "strength[" << j << "]";
    g << "hwhm[" << j << "]";
    c << "center[" << j << "]";
    result.param_names.push_back(s.str());
    result.param_names.push_back(g.str());
    result.param_names.push_back(c.str());
  }
  result.residual_rms = std::sqrt(2.0 * cost / static_cast<double>(n));

  // One-sigma estimates from the linearized normal equations at the solution.
  evaluate(p, residual, &jacobian);
  const Eigen::MatrixXd normal = jacobian.transpose() * jacobian;
  const double dof = static_cast<double>(n) - static_cast<double>(n_params);
  const double s2 = dof > 0.0 ? residual.squaredNorm() / dof : 0.0;
  const Eigen::MatrixXd cov =
      s2 * normal.ldlt().solve(Eigen::MatrixXd::Identity(
               static_cast<Eigen::Index>(n_params), static_cast<Eigen::Index>(n_params)));
  result.parameter_sigmas.resize(n_params);
  for (std::size_t i = 0; i < n_params; ++i) {
    const double v = cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
    result.parameter_sigmas[i] = v > 0.0 ? std::sqrt(v) : 0.0;
  }

  // Flag lines the data does not support.
  double max_strength = 0.0;
  for (std::size_t j = 0; j < initial.lines.size(); ++j)
    max_strength = std::max(max_strength, std::abs(p[3 * j]));
  for (std::size_t j = 0; j < initial.lines.size(); ++j) {
    if (std::abs(p[3 * j]) < 1e-3 * max_strength) {
      std::ostringstream msg;
      msg << "degenerate component " << j;
      result.flags.push_back(msg.str());
    }
  }
  return result;
}

LogLawFit fit_log_law(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw ValidationError("insufficient data: need at least 3 points");
  double ref = 0.0;
  for (const auto& [power, advance] : points) {
    if (!(power > 0.0) || !std::isfinite(power) || !std::isfinite(advance))
      throw ValidationError("powers must be positive and finite");
    ref = std::max(ref, power);
  }

  const double n = static_cast<double>(points.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& [power, advance] : points) {
    const double x = std::log(power / ref);
    sx += x;
    sy += advance;
    sxx += x * x;
    sxy += x * advance;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw ValidationError("powers are all identical; log-law fit is singular");

  LogLawFit fit;
  fit.reference_power = ref;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.offset = (sy - fit.slope * sx) / n;
  double ss = 0.0;
  for (const auto& [power, advance] : points) {
    const double r = advance - (fit.offset + fit.slope * std::log(power / ref));
    ss += r * r;
  }
  fit.residual_rms = std::sqrt(ss / n);
  return fit;
}

}  // namespace fastlight
