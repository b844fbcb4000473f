#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace shepwm::svg {

namespace detail {

inline std::string escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct frame {
  double width, height;
  double left = 64, right = 16, top = 36, bottom = 44;
  double x_min, x_max, y_min, y_max;

  double map_x(double x) const {
    return left + (x - x_min) / (x_max - x_min) * (width - left - right);
  }
  double map_y(double y) const {
    return height - bottom - (y - y_min) / (y_max - y_min) * (height - top - bottom);
  }
};

inline void open_chart(std::string& out, const frame& f, const std::string& title,
                       const std::string& x_label, const std::string& y_label) {
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(f.width) + "\" height=\"" +
         num(f.height) + "\" viewBox=\"0 0 " + num(f.width) + " " + num(f.height) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + num(f.width / 2) + "\" y=\"20\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"14\">" + escape(title) + "</text>\n";
  // axes
  out += "<line x1=\"" + num(f.left) + "\" y1=\"" + num(f.height - f.bottom) + "\" x2=\"" +
         num(f.width - f.right) + "\" y2=\"" + num(f.height - f.bottom) +
         "\" stroke=\"black\"/>\n";
  out += "<line x1=\"" + num(f.left) + "\" y1=\"" + num(f.top) + "\" x2=\"" + num(f.left) +
         "\" y2=\"" + num(f.height - f.bottom) + "\" stroke=\"black\"/>\n";
  out += "<text x=\"" + num((f.left + f.width - f.right) / 2) + "\" y=\"" +
         num(f.height - 8) + "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\">" + escape(x_label) + "</text>\n";
  out += "<text x=\"14\" y=\"" + num((f.top + f.height - f.bottom) / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
         "transform=\"rotate(-90 14 " + num((f.top + f.height - f.bottom) / 2) + ")\">" +
         escape(y_label) + "</text>\n";
  // tick labels at the corners of the data range
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", f.x_min);
  out += "<text x=\"" + num(f.left) + "\" y=\"" + num(f.height - f.bottom + 16) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" + buf +
         "</text>\n";
  std::snprintf(buf, sizeof buf, "%g", f.x_max);
  out += "<text x=\"" + num(f.width - f.right) + "\" y=\"" + num(f.height - f.bottom + 16) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" + buf +
         "</text>\n";
  std::snprintf(buf, sizeof buf, "%g", f.y_min);
  out += "<text x=\"" + num(f.left - 6) + "\" y=\"" + num(f.height - f.bottom + 4) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" + buf +
         "</text>\n";
  std::snprintf(buf, sizeof buf, "%g", f.y_max);
  out += "<text x=\"" + num(f.left - 6) + "\" y=\"" + num(f.top + 4) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" + buf +
         "</text>\n";
}

}  // namespace detail

struct series {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

inline const char* default_color(std::size_t i) {
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                 "#ff7f0e", "#8c564b", "#17becf"};
  return colors[i % (sizeof colors / sizeof colors[0])];
}

/// Polyline chart, one <polyline> element per series. Gaps (NaN y) split a
/// series into nothing; callers pass only finite points.
inline std::string line_chart(const std::string& title, const std::string& x_label,
                              const std::string& y_label, const std::vector<series>& data,
                              double y_min, double y_max, double width = 640,
                              double height = 480) {
  detail::frame f{width, height};
  f.y_min = y_min;
  f.y_max = y_max;
  f.x_min = std::numeric_limits<double>::infinity();
  f.x_max = -std::numeric_limits<double>::infinity();
  for (const series& s : data)
    for (const auto& [x, y] : s.points) {
      f.x_min = std::min(f.x_min, x);
      f.x_max = std::max(f.x_max, x);
    }
  if (!(f.x_min < f.x_max)) {
    f.x_min = 0.0;
    f.x_max = 1.0;
  }

  std::string out;
  detail::open_chart(out, f, title, x_label, y_label);
  for (std::size_t i = 0; i < data.size(); ++i) {
    out += "<polyline fill=\"none\" stroke=\"";
    out += default_color(i);
    out += "\" stroke-width=\"2\" points=\"";
    for (const auto& [x, y] : data[i].points) {
      out += detail::num(f.map_x(x));
      out += ",";
      out += detail::num(f.map_y(y));
      out += " ";
    }
    out += "\"/>\n";
    out += "<text x=\"" + detail::num(f.width - f.right - 4) + "\" y=\"" +
           detail::num(f.top + 16 * double(i + 1)) + "\" text-anchor=\"end\" "
           "font-family=\"sans-serif\" font-size=\"11\" fill=\"" + default_color(i) + "\">" +
           detail::escape(data[i].label) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

/// Bar chart with one <rect> per bar; x positions are the bar labels' values.
inline std::string bar_chart(const std::string& title, const std::string& x_label,
                             const std::string& y_label,
                             const std::vector<std::pair<double, double>>& bars,
                             double width = 640, double height = 480) {
  detail::frame f{width, height};
  f.x_min = std::numeric_limits<double>::infinity();
  f.x_max = -std::numeric_limits<double>::infinity();
  f.y_min = 0.0;
  f.y_max = 0.0;
  for (const auto& [x, y] : bars) {
    f.x_min = std::min(f.x_min, x);
    f.x_max = std::max(f.x_max, x);
    f.y_max = std::max(f.y_max, y);
  }
  if (!(f.x_min < f.x_max)) {
    f.x_min -= 1.0;
    f.x_max += 1.0;
  }
  if (!(f.y_max > 0.0)) f.y_max = 1.0;
  f.x_min -= 1.0;
  f.x_max += 1.0;
  f.y_max *= 1.05;

  std::string out;
  detail::open_chart(out, f, title, x_label, y_label);
  const double slot = (f.width - f.left - f.right) / double(bars.size() + 1);
  const double bar_width = std::max(2.0, slot * 0.6);
  for (const auto& [x, y] : bars) {
    const double cx = f.map_x(x);
    const double top = f.map_y(y);
    out += "<rect x=\"" + detail::num(cx - bar_width / 2) + "\" y=\"" + detail::num(top) +
           "\" width=\"" + detail::num(bar_width) + "\" height=\"" +
           detail::num(f.height - f.bottom - top) + "\" fill=\"#1f77b4\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace shepwm::svg
