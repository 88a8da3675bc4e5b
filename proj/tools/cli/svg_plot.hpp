#pragma once

#include <string>
#include <utility>
#include <vector>

namespace maxsliced::cli {

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

/// Static SVG line chart, one polyline per series, with min/max axis labels.
std::string render_line_plot(const std::string& title, const std::string& x_label,
                             const std::string& y_label, const std::vector<Series>& series);

void write_line_plot(const std::string& path, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<Series>& series);

}  // namespace maxsliced::cli
