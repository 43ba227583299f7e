#include "fastlight/trace_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fastlight/errors.hpp"

namespace fastlight {

SampledTrace load_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open trace file: " + path);

  std::vector<double> times, values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    for (auto& c : line)
      if (c == ',' || c == ';' || c == '\t') c = ' ';
    std::istringstream row(line);
    double t, v;
    if (!(row >> t)) continue;  // blank or comment-only line
    if (!(row >> v)) {
      std::ostringstream msg;
      msg << "trace file " << path << " line " << line_no << ": expected two columns";
      throw ValidationError(msg.str());
    }
    times.push_back(t);
    values.push_back(v);
  }
  if (times.size() < 16)
    throw ValidationError("trace file too short: need at least 16 rows, got " +
                          std::to_string(times.size()));

  const double span = times.back() - times.front();
  if (!(span > 0.0)) throw ValidationError("trace time column must be increasing");
  const double dt = span / static_cast<double>(times.size() - 1);
  double max_dev = 0.0;
  for (std::size_t i = 1; i < times.size(); ++i)
    max_dev = std::max(max_dev, std::abs((times[i] - times[i - 1]) - dt));
  if (max_dev / dt > 1e-6) {
    std::ostringstream msg;
    msg << "non-uniform time grid: max spacing deviation " << (max_dev / dt)
        << " relative (limit 1e-6)";
    throw ValidationError(msg.str());
  }

  SampledTrace trace;
  trace.t_start = times.front();
  trace.dt = dt;
  trace.samples = std::move(values);
  trace.validate();
  return trace;
}

void write_trace(const SampledTrace& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open trace file for writing: " + path);
  for (std::size_t i = 0; i < trace.samples.size(); ++i)
    out << format_float(trace.time_at(i)) << '\t' << format_float(trace.samples[i]) << '\n';
}

void Table::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns.size())
    throw ValidationError("table row width does not match the header");
  rows.push_back(std::move(cells));
}

std::string format_float(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string serialize_table(const Table& table) {
  std::ostringstream out;
  for (const auto& c : table.comments) out << "# " << c << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out << ',';
    out << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << row[i];
    }
    out << '\n';
  }
  return out.str();
}

void write_table(const Table& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open table file for writing: " + path);
  out << serialize_table(table);
}

}  // namespace fastlight
