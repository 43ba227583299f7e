#pragma once

#include <string>
#include <vector>

#include "fastlight/pulse.hpp"

namespace fastlight {

/// Read a two-column delimited text trace (time_seconds, amplitude).
/// Whitespace or comma delimited; lines starting with '#' are comments.
/// The time column must be uniform within 1e-6 relative and hold at least 16
/// rows.
SampledTrace load_trace(const std::string& path);

/// Write a trace as two-column text with 17 significant digits.
void write_trace(const SampledTrace& trace, const std::string& path);

/// A delimited result table: comment lines, a header row, string cells.
/// Numeric cells are preformatted with 17 significant digits so reruns are
/// byte-identical and values round trip exactly.
struct Table {
  std::vector<std::string> comments;  // emitted as "# ..." lines
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> cells);
};

/// 17-significant-digit formatting used for every float cell.
std::string format_float(double value);

void write_table(const Table& table, const std::string& path);
std::string serialize_table(const Table& table);

}  // namespace fastlight
