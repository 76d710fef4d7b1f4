#pragma once

#include <string>
#include <vector>

namespace cheeger {

struct PlotSeries {
  std::string label;
  std::string color = "#1f77b4";
  bool draw_line = false;  // connect points in order
  std::vector<std::pair<double, double>> points;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  bool identity_line = false;  // dashed y = x reference
  std::vector<PlotSeries> series;
};

// Self-contained SVG scatter/line chart (no external assets).
std::string render_svg(const PlotSpec& spec, int width = 640, int height = 480);

void write_svg(const std::string& path, const PlotSpec& spec, int width = 640, int height = 480);

}  // namespace cheeger
