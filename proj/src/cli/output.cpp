#include "abfrac/cli/output.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace abfrac::cli {

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw std::runtime_error("float formatting failed");
  return std::string(buf.data(), end);
}

std::string csv_row(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) line += ',';
    line += cells[i];
  }
  line += '\n';
  return line;
}

std::string xml_escape(const std::string& text) {
  std::string out;
  for (const char ch : text) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += ch;
    }
  }
  return out;
}

namespace {

constexpr std::array<const char*, 3> kColors = {"#1f77b4", "#ff7f0e", "#2ca02c"};
constexpr double kPanelWidth = 420.0;
constexpr double kPanelHeight = 320.0;
constexpr double kMarginLeft = 62.0;
constexpr double kMarginRight = 16.0;
constexpr double kMarginTop = 34.0;
constexpr double kMarginBottom = 48.0;

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (!std::isfinite(lo)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
};

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

void render_panel(std::ostringstream& svg, const Panel& panel, double offset_x) {
  auto tx = [&](double v) { return panel.log_x ? std::log10(v) : v; };
  auto ty = [&](double v) { return panel.log_y ? std::log10(v) : v; };

  Range xr;
  Range yr;
  for (const auto& s : panel.series) {
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if ((panel.log_x && s.x[i] <= 0.0) || (panel.log_y && s.y[i] <= 0.0)) continue;
      xr.add(tx(s.x[i]));
      yr.add(ty(s.y[i]));
    }
  }
  xr.finish();
  yr.finish();

  const double x0 = offset_x + kMarginLeft;
  const double x1 = offset_x + kPanelWidth - kMarginRight;
  const double y0 = kPanelHeight - kMarginBottom;
  const double y1 = kMarginTop;
  auto px = [&](double v) { return x0 + (tx(v) - xr.lo) / (xr.hi - xr.lo) * (x1 - x0); };
  auto py = [&](double v) { return y0 - (ty(v) - yr.lo) / (yr.hi - yr.lo) * (y0 - y1); };

  svg << "<g>\n";
  svg << "<rect x=\"" << num(x0) << "\" y=\"" << num(y1) << "\" width=\"" << num(x1 - x0)
      << "\" height=\"" << num(y0 - y1) << "\" fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>\n";
  svg << "<text x=\"" << num((x0 + x1) / 2) << "\" y=\"" << num(y1 - 12)
      << "\" text-anchor=\"middle\" font-size=\"13\">" << xml_escape(panel.title) << "</text>\n";
  svg << "<text x=\"" << num((x0 + x1) / 2) << "\" y=\"" << num(kPanelHeight - 10)
      << "\" text-anchor=\"middle\" font-size=\"12\">" << xml_escape(panel.x_label) << "</text>\n";
  svg << "<text x=\"" << num(offset_x + 14) << "\" y=\"" << num((y0 + y1) / 2)
      << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 " << num(offset_x + 14)
      << " " << num((y0 + y1) / 2) << ")\">" << xml_escape(panel.y_label) << "</text>\n";

  for (int t = 0; t <= 4; ++t) {
    const double fx = xr.lo + (xr.hi - xr.lo) * t / 4.0;
    const double fy = yr.lo + (yr.hi - yr.lo) * t / 4.0;
    const double sx = x0 + (x1 - x0) * t / 4.0;
    const double sy = y0 - (y0 - y1) * t / 4.0;
    const double lx = panel.log_x ? std::pow(10.0, fx) : fx;
    const double ly = panel.log_y ? std::pow(10.0, fy) : fy;
    svg << "<line x1=\"" << num(sx) << "\" y1=\"" << num(y0) << "\" x2=\"" << num(sx) << "\" y2=\""
        << num(y0 + 4) << "\" stroke=\"#333\"/>\n";
    svg << "<text x=\"" << num(sx) << "\" y=\"" << num(y0 + 16)
        << "\" text-anchor=\"middle\" font-size=\"10\">" << num(lx) << "</text>\n";
    svg << "<line x1=\"" << num(x0 - 4) << "\" y1=\"" << num(sy) << "\" x2=\"" << num(x0)
        << "\" y2=\"" << num(sy) << "\" stroke=\"#333\"/>\n";
    svg << "<text x=\"" << num(x0 - 6) << "\" y=\"" << num(sy + 3)
        << "\" text-anchor=\"end\" font-size=\"10\">" << num(ly) << "</text>\n";
  }

  for (std::size_t si = 0; si < panel.series.size(); ++si) {
    const auto& s = panel.series[si];
    const char* color = kColors[si % kColors.size()];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.6\" points=\"";
    bool first = true;
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if ((panel.log_x && s.x[i] <= 0.0) || (panel.log_y && s.y[i] <= 0.0)) continue;
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      if (!first) svg << ' ';
      svg << num(px(s.x[i])) << ',' << num(py(s.y[i]));
      first = false;
    }
    svg << "\"/>\n";
    const double ly = y1 + 14.0 + 16.0 * static_cast<double>(si);
    svg << "<line x1=\"" << num(x0 + 8) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(x0 + 28)
        << "\" y2=\"" << num(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << num(x0 + 32) << "\" y=\"" << num(ly + 4) << "\" font-size=\"11\">"
        << xml_escape(s.label) << "</text>\n";
  }
  svg << "</g>\n";
}

}  // namespace

std::string render_svg(const std::vector<Panel>& panels) {
  const double width = kPanelWidth * static_cast<double>(std::max<std::size_t>(1, panels.size()));
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\""
      << num(kPanelHeight) << "\" viewBox=\"0 0 " << num(width) << " " << num(kPanelHeight)
      << "\" font-family=\"sans-serif\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  for (std::size_t i = 0; i < panels.size(); ++i) {
    render_panel(svg, panels[i], kPanelWidth * static_cast<double>(i));
  }
  svg << "</svg>\n";
  return svg.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace abfrac::cli
