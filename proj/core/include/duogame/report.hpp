#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace duogame {

// Deterministic text artifacts: every number is rendered with the shortest
// round-trip decimal form, tables carry their metadata in '#' comment lines,
// and nothing here depends on locale, time, or environment.

// Shortest decimal string that parses back to exactly v.
std::string format_double(double v);

// Fixed-point rendering with the given number of fractional digits (SVG
// coordinates, axis labels).
std::string format_fixed(double v, int digits);

// FNV-1a over the bytes of data.
std::uint64_t fnv1a64(const std::string& data);
std::string to_hex(std::uint64_t h);

struct CsvTable {
  std::vector<std::string> comments;  // emitted as leading '# ' lines
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// RFC-4180-style serialization ('\n' line ends, quoting only where needed).
std::string to_csv(const CsvTable& table);

struct SvgSeries {
  std::string label;
  std::vector<double> x, y;
};

// Small self-contained SVG 1.1 line chart.
std::string render_svg_chart(const std::string& title, const std::string& x_label,
                             const std::string& y_label,
                             const std::vector<SvgSeries>& series,
                             int width = 860, int height = 520);

// Writes content byte for byte; throws std::runtime_error on I/O failure.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace duogame
