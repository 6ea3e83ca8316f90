#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace trefftz {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotAxes {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
};

/// Minimal static line chart. Non-positive values are skipped on log axes.
void write_svg_chart(std::ostream& os, const PlotAxes& axes, const std::vector<PlotSeries>& series);

}  // namespace trefftz
