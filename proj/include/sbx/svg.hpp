#pragma once

#include <string>
#include <vector>

namespace sbx {

struct SvgSeries {
  std::string name;
  std::vector<std::pair<double, double>> points;
  std::string color = "#1f77b4";
};

struct SvgPlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  std::vector<SvgSeries> series;
  // Straight guide line y = exp(intercept) * x^slope (drawn in log-log space)
  // with an annotation; used for the fitted scaling line.
  bool draw_power_law = false;
  double power_slope = 0.0;
  double power_intercept = 0.0;
  std::string annotation;
  std::vector<double> x_markers;  // vertical marker lines (phase boundaries)
};

// Self-contained SVG document (no external assets), one polyline per series.
std::string render_svg(const SvgPlotSpec& spec);

}  // namespace sbx
