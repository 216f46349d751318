#ifndef CLSCND_SVG_PLOT_HPP
#define CLSCND_SVG_PLOT_HPP

#include <clscnd/errors.hpp>
#include <clscnd/instance_io.hpp>
#include <clscnd/pareto.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace clscnd {

struct PlotSeries {
  std::string label;
  std::vector<ObjectivePoint> points;
};

struct PlotOptions {
  double width = 720.0;
  double height = 480.0;
  std::string title = "Pareto front";
  std::string currency = "\xC2\xA3";
};

namespace detail {

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
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

inline std::string fixed(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

/// Tick label: plain for small magnitudes, scientific otherwise.
inline std::string tick_label(double v) {
  char buf[32];
  if (v != 0.0 && (std::abs(v) >= 1e5 || std::abs(v) < 1e-2))
    std::snprintf(buf, sizeof buf, "%.3e", v);
  else
    std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

inline const char* series_color(std::size_t k) {
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};
  return palette[k % 6];
}

}  // namespace detail

/// Standalone SVG scatter: f1 on x, f2 on y, one marker per point with class
/// "marker series-<k>", one legend entry per series.
inline std::string render_svg(const std::vector<PlotSeries>& series, const PlotOptions& opt = {}) {
  using detail::fixed;
  const double left = 90, right = 180, top = 40, bottom = 60;
  const double pw = opt.width - left - right, ph = opt.height - top - bottom;

  double x0 = HUGE_VAL, x1 = -HUGE_VAL, y0 = HUGE_VAL, y1 = -HUGE_VAL;
  for (const auto& s : series)
    for (const auto& p : s.points) {
      if (!std::isfinite(p.f1) || !std::isfinite(p.f2)) throw InvalidParameter("plot: non-finite point");
      x0 = std::min(x0, p.f1);
      x1 = std::max(x1, p.f1);
      y0 = std::min(y0, p.f2);
      y1 = std::max(y1, p.f2);
    }
  if (x0 > x1) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  auto pad = [](double& lo, double& hi) {
    const double span = hi - lo;
    const double m = span > 0 ? 0.05 * span : std::max(1.0, 0.05 * std::abs(lo));
    lo -= m;
    hi += m;
  };
  pad(x0, x1);
  pad(y0, y1);
  auto sx = [&](double v) { return left + (v - x0) / (x1 - x0) * pw; };
  auto sy = [&](double v) { return top + ph - (v - y0) / (y1 - y0) * ph; };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(opt.width, 0) + "\" height=\"" +
         fixed(opt.height, 0) + "\" viewBox=\"0 0 " + fixed(opt.width, 0) + " " + fixed(opt.height, 0) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + fixed(left + pw / 2) + "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">" + detail::xml_escape(opt.title) + "</text>\n";
  svg += "<rect x=\"" + fixed(left) + "\" y=\"" + fixed(top) + "\" width=\"" + fixed(pw) + "\" height=\"" + fixed(ph) +
         "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int k = 0; k <= 4; ++k) {
    const double xv = x0 + (x1 - x0) * k / 4.0, yv = y0 + (y1 - y0) * k / 4.0;
    svg += "<line x1=\"" + fixed(sx(xv)) + "\" y1=\"" + fixed(top + ph) + "\" x2=\"" + fixed(sx(xv)) + "\" y2=\"" +
           fixed(top + ph + 5) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fixed(sx(xv)) + "\" y=\"" + fixed(top + ph + 20) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" + detail::tick_label(xv) +
           "</text>\n";
    svg += "<line x1=\"" + fixed(left - 5) + "\" y1=\"" + fixed(sy(yv)) + "\" x2=\"" + fixed(left) + "\" y2=\"" +
           fixed(sy(yv)) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fixed(left - 8) + "\" y=\"" + fixed(sy(yv) + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + detail::tick_label(yv) +
           "</text>\n";
  }
  svg += "<text x=\"" + fixed(left + pw / 2) + "\" y=\"" + fixed(opt.height - 15) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">f1: total cost (" +
         detail::xml_escape(opt.currency) + ")</text>\n";
  svg += "<text transform=\"translate(20," + fixed(top + ph / 2) +
         ") rotate(-90)\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">f2: total emissions "
         "(kg CO2)</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const std::string cls = "series-" + std::to_string(k);
    const char* color = detail::series_color(k);
    svg += "<g class=\"" + cls + "\">\n";
    for (const auto& p : series[k].points)
      svg += "<circle class=\"marker " + cls + "\" cx=\"" + fixed(sx(p.f1)) + "\" cy=\"" + fixed(sy(p.f2)) +
             "\" r=\"4\" fill=\"" + color + "\"/>\n";
    svg += "</g>\n";
    const double ly = top + 10 + 20.0 * static_cast<double>(k);
    svg += "<rect class=\"legend-swatch\" x=\"" + fixed(left + pw + 15) + "\" y=\"" + fixed(ly) +
           "\" width=\"10\" height=\"10\" fill=\"" + color + "\"/>\n";
    svg += "<text x=\"" + fixed(left + pw + 30) + "\" y=\"" + fixed(ly + 9) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + detail::xml_escape(series[k].label) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

/// CSV sidecar: one row per plotted point.
inline std::string plot_csv(const std::vector<PlotSeries>& series) {
  std::string out = "series,f1,f2\n";
  for (const auto& s : series)
    for (const auto& p : s.points) {
      std::string label = s.label;
      if (label.find_first_of(",\"\n") != std::string::npos) {
        std::string q = "\"";
        for (char c : label) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        label = q + "\"";
      }
      out += label + "," + format_double(p.f1) + "," + format_double(p.f2) + "\n";
    }
  return out;
}

}  // namespace clscnd

#endif  // CLSCND_SVG_PLOT_HPP
