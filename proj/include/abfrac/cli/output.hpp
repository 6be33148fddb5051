#pragma once

#include <string>
#include <vector>

namespace abfrac::cli {

/// Shortest decimal that round-trips to the same double; -0 prints as 0.
std::string format_double(double v);

/// Comma-joined row terminated by '\n'.
std::string csv_row(const std::vector<std::string>& cells);

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct Panel {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  bool log_x = false;
  bool log_y = false;
};

/// Self-contained SVG with the panels laid out left to right. Series colours
/// cycle blue, orange, green.
std::string render_svg(const std::vector<Panel>& panels);

std::string xml_escape(const std::string& text);

/// Writes `content` to `path`, throwing std::runtime_error on failure.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace abfrac::cli
