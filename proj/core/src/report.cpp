#include "duogame/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace duogame {

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_fixed(double v, int digits) {
  if (v == 0.0) v = 0.0;
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
  return std::string(buf, res.ptr);
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string to_hex(std::uint64_t h) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

namespace {

bool needs_quoting(const std::string& field) {
  if (field.empty()) return false;
  if (field.front() == ' ' || field.back() == ' ') return true;
  return field.find_first_of(",\"\n\r") != std::string::npos;
}

void append_field(std::string& out, const std::string& field) {
  if (!needs_quoting(field)) {
    out += field;
    return;
  }
  out += '"';
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
}

void append_row(std::string& out, const std::vector<std::string>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out += ',';
    append_field(out, row[i]);
  }
  out += '\n';
}

}  // namespace

std::string to_csv(const CsvTable& table) {
  std::string out;
  for (const std::string& c : table.comments) {
    out += "# ";
    out += c;
    out += '\n';
  }
  if (!table.header.empty()) append_row(out, table.header);
  for (const auto& row : table.rows) append_row(out, row);
  return out;
}

namespace {

const char* kPalette[] = {"#1f6f8b", "#c24d2c", "#2e7d32", "#6a1b9a",
                          "#b8860b", "#37474f"};

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = 0.0, hi = 1.0;
  void widen(double v) {
    if (std::isfinite(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
};

}  // namespace

std::string render_svg_chart(const std::string& title, const std::string& x_label,
                            const std::string& y_label,
                            const std::vector<SvgSeries>& series, int width,
                            int height) {
  double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo;
  double ylo = xlo, yhi = -xlo;
  for (const auto& s : series) {
    for (double v : s.x) {
      if (std::isfinite(v)) { xlo = std::min(xlo, v); xhi = std::max(xhi, v); }
    }
    for (double v : s.y) {
      if (std::isfinite(v)) { ylo = std::min(ylo, v); yhi = std::max(yhi, v); }
    }
  }
  if (!(xlo < xhi)) { xlo -= 0.5; xhi += 0.5; }
  if (!(ylo < yhi)) { ylo -= 0.5; yhi += 0.5; }
  const double ypad = 0.05 * (yhi - ylo);
  ylo -= ypad;
  yhi += ypad;

  const double ml = 70, mr = 20, mt = 40, mb = 55;
  const double pw = width - ml - mr, ph = height - mt - mb;
  auto sx = [&](double v) { return ml + (v - xlo) / (xhi - xlo) * pw; };
  auto sy = [&](double v) { return mt + ph - (v - ylo) / (yhi - ylo) * ph; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         std::to_string(width) + "\" height=\"" + std::to_string(height) +
         "\" viewBox=\"0 0 " + std::to_string(width) + " " +
         std::to_string(height) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + format_fixed(width / 2.0, 1) +
         "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">" +
         escape_xml(title) + "</text>\n";

  const int ticks = 5;
  svg += "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
  for (int i = 0; i <= ticks; ++i) {
    const double fx = xlo + (xhi - xlo) * i / ticks;
    const double fy = ylo + (yhi - ylo) * i / ticks;
    const std::string px = format_fixed(sx(fx), 1);
    const std::string py = format_fixed(sy(fy), 1);
    svg += "<line x1=\"" + px + "\" y1=\"" + format_fixed(mt, 1) + "\" x2=\"" + px +
           "\" y2=\"" + format_fixed(mt + ph, 1) +
           "\" stroke=\"#ddd\" stroke-width=\"1\"/>\n";
    svg += "<line x1=\"" + format_fixed(ml, 1) + "\" y1=\"" + py + "\" x2=\"" +
           format_fixed(ml + pw, 1) + "\" y2=\"" + py +
           "\" stroke=\"#ddd\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + px + "\" y=\"" + format_fixed(mt + ph + 18, 1) +
           "\" text-anchor=\"middle\">" + format_fixed(fx, 3) + "</text>\n";
    svg += "<text x=\"" + format_fixed(ml - 8, 1) + "\" y=\"" + py +
           "\" text-anchor=\"end\" dominant-baseline=\"middle\">" +
           format_fixed(fy, 3) + "</text>\n";
  }
  svg += "</g>\n";

  svg += "<rect x=\"" + format_fixed(ml, 1) + "\" y=\"" + format_fixed(mt, 1) +
         "\" width=\"" + format_fixed(pw, 1) + "\" height=\"" + format_fixed(ph, 1) +
         "\" fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>\n";
  svg += "<text x=\"" + format_fixed(ml + pw / 2.0, 1) + "\" y=\"" +
         format_fixed(height - 12.0, 1) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
         escape_xml(x_label) + "</text>\n";
  svg += "<text x=\"18\" y=\"" + format_fixed(mt + ph / 2.0, 1) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
         "transform=\"rotate(-90 18 " +
         format_fixed(mt + ph / 2.0, 1) + ")\">" + escape_xml(y_label) +
         "</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const SvgSeries& s = series[si];
    const char* color = kPalette[si % (sizeof kPalette / sizeof kPalette[0])];
    std::string points;
    const std::size_t n = std::min(s.x.size(), s.y.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      if (!points.empty()) points += ' ';
      points += format_fixed(sx(s.x[i]), 2) + "," + format_fixed(sy(s.y[i]), 2);
    }
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"1.8\" points=\"" + points + "\"/>\n";
    const double ly = mt + 16.0 + 18.0 * static_cast<double>(si);
    svg += "<line x1=\"" + format_fixed(ml + pw - 150, 1) + "\" y1=\"" +
           format_fixed(ly - 4, 1) + "\" x2=\"" + format_fixed(ml + pw - 126, 1) +
           "\" y2=\"" + format_fixed(ly - 4, 1) + "\" stroke=\"" + color +
           "\" stroke-width=\"1.8\"/>\n";
    svg += "<text x=\"" + format_fixed(ml + pw - 120, 1) + "\" y=\"" +
           format_fixed(ly, 1) +
           "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#333\">" +
           escape_xml(s.label) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace duogame
