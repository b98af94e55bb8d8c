#pragma once

#include <string>
#include <vector>

namespace lca::svg {

// Hand-rolled, self-contained SVG emission.  No external assets, no
// timestamps; all reals go through fixed "%.6g" formatting so identical
// inputs give identical bytes.

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct HeatmapPanel {
  std::string title;
  // values[yi * xs.size() + xi]; color is log10(value) clipped to [-4, 0]
  std::vector<double> values;
};

std::string heatmap(const std::vector<double>& xs, const std::vector<double>& ys,
                    const std::vector<HeatmapPanel>& panels, const std::string& x_label,
                    const std::string& y_label, const std::string& title);

std::string line_plot(const std::vector<Series>& series, bool log_x, bool log_y,
                      const std::string& x_label, const std::string& y_label,
                      const std::string& title);

}  // namespace lca::svg
