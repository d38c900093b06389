#pragma once

#include <string>
#include <vector>

namespace berezin::svg {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool markers_only = false;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
};

/// Static SVG line/scatter plot. Nonpositive values are dropped on log axes.
std::string render(const PlotSpec& spec, const std::vector<Series>& series);

}  // namespace berezin::svg
