#pragma once

#include <string>
#include <utility>
#include <vector>

namespace fog2c::svg {

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points;
  bool step = false;  // draw as a right-continuous staircase
};

struct Chart {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  std::vector<Series> series;
};

/// Standalone SVG document. Points that cannot be placed (non-finite, or
/// non-positive on a log axis) are dropped.
std::string render(const Chart& chart);

}  // namespace fog2c::svg
