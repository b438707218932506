#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fmb {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  // Optional shaded band; both empty or both the size of x.
  std::vector<double> lower;
  std::vector<double> upper;
  bool markers = true;
  bool line = true;
};

/// Minimal self-contained SVG line chart. On a log axis, non-positive values
/// are skipped.
struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  std::vector<PlotSeries> series;
};

void write_svg(std::ostream& out, const PlotSpec& spec);

}  // namespace fmb
