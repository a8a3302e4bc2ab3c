#pragma once

#include <string>
#include <vector>

namespace plap {

struct SvgSeries {
  std::string label;
  std::vector<double> x, y;
};

// Minimal static line plot: axes with 5 ticks per side, one polyline per
// series from a fixed palette, legend in the top right. Non-finite points
// split the polyline. Good enough to eyeball profiles and branches.
std::string svg_line_plot(const std::string& title, const std::string& x_label,
                          const std::string& y_label,
                          const std::vector<SvgSeries>& series);

}  // namespace plap
