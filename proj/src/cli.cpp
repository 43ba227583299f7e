#include "fastlight/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fastlight/config.hpp"
#include "fastlight/errors.hpp"
#include "fastlight/experiments.hpp"
#include "fastlight/fit.hpp"
#include "fastlight/fourwm.hpp"
#include "fastlight/metrics.hpp"
#include "fastlight/propagate.hpp"
#include "fastlight/trace_io.hpp"
#include "fastlight/units.hpp"

namespace fastlight {

namespace {

RunConfig resolve_config(const std::string& spec) {
  if (spec == "default") return default_config();
  return load_config(spec);
}

std::string resolve_out(const std::string& out) {
  namespace fs = std::filesystem;
  const char* dir = std::getenv("FASTLIGHT_OUT_DIR");
  if (dir && *dir && fs::path(out).is_relative()) return (fs::path(dir) / out).string();
  return out;
}

std::string to_cell(double v) { return format_float(v); }

std::string sanitize(std::string text) {
  for (auto& c : text)
    if (c == ',' || c == '\n') c = ';';
  return text;
}

std::vector<std::pair<double, double>> load_xy(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open data file: " + path);
  std::vector<std::pair<double, double>> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    for (auto& c : line)
      if (c == ',' || c == ';' || c == '\t') c = ' ';
    std::istringstream row(line);
    double x, y;
    if (!(row >> x)) continue;
    if (!(row >> y))
      throw ValidationError("data file " + path + " line " + std::to_string(line_no) +
                            ": expected two columns");
    out.emplace_back(x, y);
  }
  return out;
}

void append_metrics_comments(Table& table, const std::string& label,
                             const AdvancementMetrics& m) {
  table.comments.push_back(label + "_peak_advance_s=" + format_float(m.peak_advance));
  table.comments.push_back(label + "_relative_advance=" + format_float(m.relative_advance));
  table.comments.push_back(label + "_intensity_gain=" + format_float(m.intensity_gain));
  table.comments.push_back(label + "_fwhm_s=" + format_float(m.fwhm_out));
  table.comments.push_back(label + "_distortion=" + format_float(m.distortion));
  table.comments.push_back(label + "_group_velocity_m_s=" + format_float(m.group_velocity));
}

int cmd_sweep(const RunConfig& config, const std::string& out) {
  const auto rows = run_detuning_sweep(config);
  Table table;
  table.comments = geometry_header(config);
  table.columns = {"delta_hz",
                   "seed_advance_s",
                   "conjugate_advance_s",
                   "seed_gain",
                   "conjugate_gain",
                   "conjugate_measurable",
                   "seed_distortion",
                   "conjugate_distortion",
                   "seed_relative_advance",
                   "conjugate_relative_advance",
                   "error"};
  for (const auto& r : rows) {
    table.add_row({to_cell(r.delta_hz), to_cell(r.seed_advance),
                   to_cell(r.conjugate_advance), to_cell(r.seed_gain),
                   to_cell(r.conjugate_gain), r.conjugate_measurable ? "1" : "0",
                   to_cell(r.seed_distortion), to_cell(r.conjugate_distortion),
                   to_cell(r.seed_relative_advance), to_cell(r.conjugate_relative_advance),
                   sanitize(r.error)});
  }
  write_table(table, out);
  return 0;
}

int cmd_traces(const RunConfig& config, double delta_hz, const std::string& out) {
  const TracePairResult result = run_trace_pair(config, delta_hz);
  Table table;
  table.comments = geometry_header(config);
  table.comments.push_back("delta_hz=" + format_float(delta_hz));
  table.comments.push_back("traces are peak-normalized; multiply back by the ratios below");
  table.comments.push_back("seed_peak_ratio=" + format_float(result.seed_peak_ratio));
  table.comments.push_back("conjugate_peak_ratio=" + format_float(result.conjugate_peak_ratio));
  append_metrics_comments(table, "seed", result.seed_metrics);
  append_metrics_comments(table, "conjugate", result.conjugate_metrics);
  table.columns = {"time_s", "reference", "seed", "conjugate"};
  for (std::size_t i = 0; i < result.reference.samples.size(); ++i) {
    table.add_row({to_cell(result.reference.time_at(i)), to_cell(result.reference.samples[i]),
                   to_cell(result.seed.samples[i]), to_cell(result.conjugate.samples[i])});
  }
  write_table(table, out);
  return 0;
}

int cmd_propagate(const RunConfig& config, double delta_hz, const std::string& out) {
  const SampledTrace reference = synthesize(config.pulse, config.grid);
  const ChannelDetunings det = channel_detunings(config.geometry, delta_hz);
  const MediumChannel channel = shifted_to_carrier(config.seed_channel(), det.seed);
  const PropagationResult result =
      propagate_pulse(reference, channel, config.thresholds.wraparound);
  const AdvancementMetrics m = advancement(result.output, reference, config.seed.length_m);

  Table table;
  table.comments = geometry_header(config);
  table.comments.push_back("delta_hz=" + format_float(delta_hz));
  table.comments.push_back("edge_energy_fraction=" + format_float(result.edge_energy_fraction));
  append_metrics_comments(table, "output", m);
  table.columns = {"time_s", "reference", "output"};
  for (std::size_t i = 0; i < reference.samples.size(); ++i)
    table.add_row({to_cell(reference.time_at(i)), to_cell(reference.samples[i]),
                   to_cell(result.output.samples[i])});
  write_table(table, out);
  return 0;
}

int cmd_analyze(const RunConfig& config, const std::string& trace_path,
                const std::string& reference_path, const std::string& out) {
  const SampledTrace output = load_trace(trace_path);
  const SampledTrace reference = load_trace(reference_path);
  const UncertainAdvancement result =
      advancement_with_uncertainty(output, reference, config.seed.length_m);

  Table table;
  table.comments.push_back("trace=" + trace_path);
  table.comments.push_back("reference=" + reference_path);
  table.comments.push_back("advance_sigma is one standard deviation from a residual-noise bootstrap");
  table.columns = {"peak_advance_s", "advance_sigma_s", "relative_advance",
                   "intensity_gain", "fwhm_out_s",      "fwhm_ref_s",
                   "distortion",     "group_velocity_m_s"};
  const auto& m = result.metrics;
  table.add_row({to_cell(m.peak_advance), to_cell(result.advance_sigma),
                 to_cell(m.relative_advance), to_cell(m.intensity_gain),
                 to_cell(m.fwhm_out), to_cell(m.fwhm_ref), to_cell(m.distortion),
                 to_cell(m.group_velocity)});
  write_table(table, out);
  return 0;
}

int cmd_fit_lineshape(const RunConfig& config, const std::string& data_path,
                      const std::string& out) {
  const auto xy = load_xy(data_path);
  std::vector<LineshapeSample> samples;
  samples.reserve(xy.size());
  for (const auto& [detuning_hz, gain] : xy)
    samples.push_back({hz_to_angular(detuning_hz), gain});

  const FitResult fit = fit_lineshape(samples, config.conjugate_channel());

  Table table;
  table.comments.push_back("data=" + data_path);
  table.comments.push_back("initial guess: conjugate channel from the config");
  table.comments.push_back("converged=" + std::string(fit.converged ? "1" : "0"));
  table.comments.push_back("iterations=" + std::to_string(fit.iterations));
  table.comments.push_back("residual_rms_log_gain=" + format_float(fit.residual_rms));
  for (const auto& f : fit.flags) table.comments.push_back("flag: " + f);
  table.columns = {"name", "value", "sigma", "unit"};
  for (std::size_t i = 0; i < fit.params.size(); ++i) {
    const bool is_strength = i % 3 == 0;
    table.add_row({fit.param_names[i], to_cell(fit.params[i]),
                   to_cell(fit.parameter_sigmas[i]), is_strength ? "1/m" : "rad/s"});
  }
  write_table(table, out);
  return 0;
}

int cmd_fit_power(const std::string& data_path, const std::string& out) {
  const auto points = load_xy(data_path);
  const LogLawFit fit = fit_log_law(points);
  Table table;
  table.comments.push_back("data=" + data_path);
  table.comments.push_back("model: advancement = offset + slope * ln(power / reference_power)");
  table.columns = {"offset_s", "slope_s_per_ln", "reference_power", "residual_rms_s"};
  table.add_row({to_cell(fit.offset), to_cell(fit.slope), to_cell(fit.reference_power),
                 to_cell(fit.residual_rms)});
  write_table(table, out);
  return 0;
}

int cmd_search_max(const RunConfig& config, double cap, const std::string& out) {
  const SearchResult result = search_max_advance(config, cap);
  Table table;
  table.comments = geometry_header(config);
  table.comments.push_back("distortion_cap=" + format_float(cap));
  table.columns = {"delta_hz", "advancement_s", "distortion"};
  table.add_row({to_cell(result.delta_hz), to_cell(result.advancement),
                 to_cell(result.distortion)});
  write_table(table, out);
  return 0;
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args) {
  CLI::App app{"fastlight: pulse propagation and analysis for four-wave-mixing gain media"};
  app.name("fastlight");
  app.require_subcommand(1);

  std::string config_spec, out_path, data_path, trace_path, reference_path;
  double delta_hz = 0.0;
  double cap = -1.0;
  bool have_delta = false;

  const auto add_common = [&](CLI::App* cmd, bool needs_out = true) {
    cmd->add_option("--config", config_spec,
                    "config file path, or \"default\" for the built-in defaults")
        ->required();
    if (needs_out) cmd->add_option("--out", out_path, "output file")->required();
  };

  auto* propagate_cmd = app.add_subcommand("propagate", "propagate one seed trace pair");
  add_common(propagate_cmd);
  propagate_cmd->add_option("--delta", delta_hz, "two-photon detuning override, Hz")
      ->each([&](const std::string&) { have_delta = true; });

  auto* sweep_cmd = app.add_subcommand("sweep", "detuning sweep table");
  add_common(sweep_cmd);

  auto* traces_cmd = app.add_subcommand("traces", "reference/seed/conjugate trace triple");
  add_common(traces_cmd);
  traces_cmd->add_option("--delta", delta_hz, "two-photon detuning override, Hz")
      ->each([&](const std::string&) { have_delta = true; });

  auto* fit_line_cmd =
      app.add_subcommand("fit-lineshape", "fit Lorentzian lines to a sampled gain spectrum");
  add_common(fit_line_cmd);
  fit_line_cmd->add_option("--data", data_path, "two-column file: detuning_hz, gain")
      ->required();

  auto* fit_power_cmd =
      app.add_subcommand("fit-power", "log-law fit of advancement vs input power");
  add_common(fit_power_cmd);
  fit_power_cmd->add_option("--data", data_path, "two-column file: power, advancement_s")
      ->required();

  auto* analyze_cmd = app.add_subcommand("analyze", "metrics for an ingested trace pair");
  add_common(analyze_cmd);
  analyze_cmd->add_option("--trace", trace_path, "output trace file")->required();
  analyze_cmd->add_option("--reference", reference_path, "reference trace file")->required();

  auto* search_cmd =
      app.add_subcommand("search-max", "max conjugate advancement under a distortion cap");
  add_common(search_cmd);
  search_cmd->add_option("--cap", cap, "distortion cap (default: thresholds.distortion_cap)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    const RunConfig config = resolve_config(config_spec);
    const std::string out = resolve_out(out_path);
    const double delta =
        have_delta ? delta_hz : config.geometry.two_photon_detuning;

    if (propagate_cmd->parsed()) return cmd_propagate(config, delta, out);
    if (sweep_cmd->parsed()) return cmd_sweep(config, out);
    if (traces_cmd->parsed()) return cmd_traces(config, delta, out);
    if (fit_line_cmd->parsed()) return cmd_fit_lineshape(config, data_path, out);
    if (fit_power_cmd->parsed()) return cmd_fit_power(data_path, out);
    if (analyze_cmd->parsed()) return cmd_analyze(config, trace_path, reference_path, out);
    if (search_cmd->parsed())
      return cmd_search_max(config, cap >= 0.0 ? cap : config.thresholds.distortion_cap, out);
    std::cerr << app.help();
    return 1;
  } catch (const ValidationError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  } catch (const NumericError& err) {
    std::cerr << "numeric failure: " << err.what() << '\n';
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "numeric failure: " << err.what() << '\n';
    return 2;
  }
}

}  // namespace fastlight
