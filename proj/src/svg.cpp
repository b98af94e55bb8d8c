#include "lca/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace lca::svg {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string color_hex(int r, int g, int b) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
  return buf;
}

// Dark blue -> cyan -> yellow ramp over t in [0,1].
std::string ramp(double t) {
  t = std::clamp(t, 0.0, 1.0);
  const double stops[3][3] = {{13, 30, 92}, {36, 170, 190}, {250, 230, 80}};
  const double pos = t * 2.0;
  const int k = pos >= 1.0 ? 1 : 0;
  const double f = pos - k;
  const int r = static_cast<int>(std::lround(stops[k][0] + f * (stops[k + 1][0] - stops[k][0])));
  const int g = static_cast<int>(std::lround(stops[k][1] + f * (stops[k + 1][1] - stops[k][1])));
  const int b = static_cast<int>(std::lround(stops[k][2] + f * (stops[k + 1][2] - stops[k][2])));
  return color_hex(r, g, b);
}

const char* kPalette[8] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                           "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string text(double x, double y, const std::string& s, int size, const char* anchor) {
  return "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-size=\"" + std::to_string(size) +
         "\" font-family=\"monospace\" text-anchor=\"" + anchor + "\">" + s + "</text>\n";
}

}  // namespace

std::string heatmap(const std::vector<double>& xs, const std::vector<double>& ys,
                    const std::vector<HeatmapPanel>& panels, const std::string& x_label,
                    const std::string& y_label, const std::string& title) {
  const double cell = 24.0;
  const double panel_w = cell * static_cast<double>(xs.size());
  const double panel_h = cell * static_cast<double>(ys.size());
  const double margin = 58.0, gap_x = 40.0, top = 46.0;
  const double width = margin + panels.size() * (panel_w + gap_x) + 40.0;
  const double height = top + panel_h + 64.0;

  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) +
                    "\" height=\"" + num(height) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += text(width / 2, 18, title, 13, "middle");

  for (std::size_t p = 0; p < panels.size(); ++p) {
    const double x0 = margin + p * (panel_w + gap_x);
    out += text(x0 + panel_w / 2, top - 8, panels[p].title, 12, "middle");
    for (std::size_t yi = 0; yi < ys.size(); ++yi) {
      for (std::size_t xi = 0; xi < xs.size(); ++xi) {
        const double v = panels[p].values[yi * xs.size() + xi];
        std::string fill = "#cccccc";  // absent cells
        if (std::isfinite(v) && v > 0.0) {
          const double lg = std::clamp(std::log10(v), -4.0, 0.0);
          fill = ramp((lg + 4.0) / 4.0);
        } else if (v == 0.0) {
          fill = ramp(0.0);
        }
        // y axis grows upward: last row at the top
        const double ry = top + panel_h - cell * static_cast<double>(yi + 1);
        out += "<rect x=\"" + num(x0 + cell * xi) + "\" y=\"" + num(ry) + "\" width=\"" +
               num(cell) + "\" height=\"" + num(cell) + "\" fill=\"" + fill + "\"/>\n";
      }
    }
    out += "<rect x=\"" + num(x0) + "\" y=\"" + num(top) + "\" width=\"" + num(panel_w) +
           "\" height=\"" + num(panel_h) + "\" fill=\"none\" stroke=\"black\"/>\n";
    out += text(x0, top + panel_h + 14, num(xs.front()), 10, "start");
    out += text(x0 + panel_w, top + panel_h + 14, num(xs.back()), 10, "end");
    out += text(x0 + panel_w / 2, top + panel_h + 28, x_label, 11, "middle");
    if (p == 0) {
      out += text(x0 - 6, top + panel_h, num(ys.front()), 10, "end");
      out += text(x0 - 6, top + 10, num(ys.back()), 10, "end");
      out += text(x0 - 34, top + panel_h / 2, y_label, 11, "middle");
    }
  }
  // color scale legend: log10 from -4 to 0
  const double lx = margin, ly = height - 22.0;
  for (int i = 0; i <= 40; ++i) {
    out += "<rect x=\"" + num(lx + 3.0 * i) + "\" y=\"" + num(ly) +
           "\" width=\"3\" height=\"8\" fill=\"" + ramp(i / 40.0) + "\"/>\n";
  }
  out += text(lx, ly - 3, "log10 = -4", 9, "start");
  out += text(lx + 123, ly - 3, "0", 9, "end");
  out += "</svg>\n";
  return out;
}

std::string line_plot(const std::vector<Series>& series, bool log_x, bool log_y,
                      const std::string& x_label, const std::string& y_label,
                      const std::string& title) {
  const double width = 560.0, height = 360.0;
  const double left = 62.0, right = 150.0, top = 36.0, bottom = 46.0;
  const double pw = width - left - right, ph = height - top - bottom;

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const double xv = s.x[i], yv = s.y[i];
      if (!std::isfinite(xv) || !std::isfinite(yv)) continue;
      if (log_x && xv <= 0.0) continue;
      if (log_y && yv <= 0.0) continue;
      xmin = std::min(xmin, xv);
      xmax = std::max(xmax, xv);
      ymin = std::min(ymin, yv);
      ymax = std::max(ymax, yv);
    }
  }
  if (!(xmin < xmax)) {
    xmax = xmin + 1.0;
  }
  if (!(ymin < ymax)) {
    ymax = ymin + 1.0;
  }
  auto tx = [&](double v) {
    const double a = log_x ? std::log10(v) : v;
    const double lo = log_x ? std::log10(xmin) : xmin;
    const double hi = log_x ? std::log10(xmax) : xmax;
    return left + pw * (a - lo) / (hi - lo);
  };
  auto ty = [&](double v) {
    const double a = log_y ? std::log10(v) : v;
    const double lo = log_y ? std::log10(ymin) : ymin;
    const double hi = log_y ? std::log10(ymax) : ymax;
    return top + ph * (1.0 - (a - lo) / (hi - lo));
  };

  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) +
                    "\" height=\"" + num(height) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += text(width / 2, 18, title, 13, "middle");
  out += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(pw) +
         "\" height=\"" + num(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
  out += text(left, height - 14, num(xmin), 10, "start");
  out += text(left + pw, height - 14, num(xmax), 10, "end");
  out += text(left + pw / 2, height - 4, x_label + (log_x ? " (log)" : ""), 11, "middle");
  out += text(left - 6, top + ph, num(ymin), 10, "end");
  out += text(left - 6, top + 10, num(ymax), 10, "end");
  out += text(16, top - 8, y_label + (log_y ? " (log)" : ""), 11, "start");

  std::size_t legend_row = 0;
  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    std::string pts;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const double xv = s.x[i], yv = s.y[i];
      if (!std::isfinite(xv) || !std::isfinite(yv)) continue;
      if (log_x && xv <= 0.0) continue;
      if (log_y && yv <= 0.0) continue;
      pts += num(tx(xv)) + "," + num(ty(yv)) + " ";
    }
    const char* col = kPalette[si % 8];
    out += "<polyline fill=\"none\" stroke=\"" + std::string(col) +
           "\" stroke-width=\"1.4\" points=\"" + pts + "\"/>\n";
    if (!s.label.empty()) {
      const double lyy = top + 16.0 + 16.0 * static_cast<double>(legend_row++);
      out += "<line x1=\"" + num(left + pw + 8) + "\" y1=\"" + num(lyy - 4) + "\" x2=\"" +
             num(left + pw + 28) + "\" y2=\"" + num(lyy - 4) + "\" stroke=\"" + col +
             "\" stroke-width=\"2\"/>\n";
      out += text(left + pw + 32, lyy, s.label, 10, "start");
    }
  }
  out += "</svg>\n";
  return out;
}

}  // namespace lca::svg
