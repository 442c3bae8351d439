#include "crystallize/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "crystallize/cli.hpp"

namespace crystallize::svg {

namespace {

// 1, 2 or 5 times a power of ten, giving roughly `target` ticks over span.
double nice_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double f = raw / mag;
  return (f < 1.5 ? 1.0 : f < 3.5 ? 2.0 : f < 7.5 ? 5.0 : 10.0) * mag;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render(const Plot& plot, std::span<const Series> series) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0;
  double y0 = x0, y1 = -x0;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  }
  if (!std::isfinite(x0)) { x0 = 0; x1 = 1; y0 = 0; y1 = 1; }
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;
  if (plot.y_min) y0 = *plot.y_min;
  if (plot.y_max) y1 = *plot.y_max;
  if (x1 <= x0) x1 = x0 + 1;
  if (y1 <= y0) y1 = y0 + 1;

  const double left = 64, right = 16, top = 32, bottom = 44;
  const double pw = plot.width - left - right, ph = plot.height - top - bottom;
  auto sx = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
  auto sy = [&](double y) { return top + (1.0 - (std::clamp(y, y0, y1) - y0) / (y1 - y0)) * ph; };

  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">\n"
      "<!-- crystallize {2} -->\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
      plot.width, plot.height, cli::kVersion);
  out += fmt::format("<text x=\"{}\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">{}</text>\n",
                     left + pw / 2, escape(plot.title));
  out += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n", left, top, pw, ph);

  const double xs = nice_step(x1 - x0, 8);
  for (double t = std::ceil(x0 / xs) * xs; t <= x1 + 1e-9 * xs; t += xs) {
    out += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\" stroke=\"black\"/>"
                       "<text x=\"{0:.2f}\" y=\"{3:.2f}\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">{4:g}</text>\n",
                       sx(t), top + ph, top + ph + 4, top + ph + 16, std::abs(t) < 1e-12 * xs ? 0.0 : t);
  }
  const double ys = nice_step(y1 - y0, 6);
  for (double t = std::ceil(y0 / ys) * ys; t <= y1 + 1e-9 * ys; t += ys) {
    out += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\" stroke=\"black\"/>"
                       "<text x=\"{3:.2f}\" y=\"{4:.2f}\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">{5:g}</text>\n",
                       left - 4, sy(t), left, left - 6, sy(t) + 3, std::abs(t) < 1e-12 * ys ? 0.0 : t);
  }
  if (y0 < 0 && y1 > 0) {
    out += fmt::format("<line x1=\"{0}\" y1=\"{1:.2f}\" x2=\"{2}\" y2=\"{1:.2f}\" stroke=\"#999\" stroke-width=\"0.5\"/>\n",
                       left, sy(0), left + pw);
  }
  out += fmt::format("<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">{}</text>\n",
                     left + pw / 2, plot.height - 8, escape(plot.x_label));
  out += fmt::format("<text x=\"14\" y=\"{0}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" "
                     "transform=\"rotate(-90 14 {0})\">{1}</text>\n",
                     top + ph / 2, escape(plot.y_label));

  int legend_row = 0;
  for (const auto& s : series) {
    std::string points;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      points += fmt::format("{:.2f},{:.2f} ", sx(s.x[i]), sy(s.y[i]));
    }
    const char* dash = s.style == Style::dashed ? " stroke-dasharray=\"4 3\"" : "";
    out += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.2\"{} points=\"{}\"/>\n", s.color, dash, points);
    if (!s.label.empty()) {
      const double ly = top + 14 + 14 * legend_row++;
      out += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"{3}\"{4}/>"
                         "<text x=\"{5}\" y=\"{6}\" font-family=\"sans-serif\" font-size=\"11\">{7}</text>\n",
                         left + pw - 150, ly, left + pw - 130, s.color, dash, left + pw - 124, ly + 4, escape(s.label));
    }
  }
  out += "</svg>\n";
  return out;
}

Series from_columns(const io::Table& table, const std::string& x, const std::string& y, std::string label) {
  Series s;
  s.label = std::move(label);
  s.x = table.column(x);
  s.y = table.column(y);
  return s;
}

Series from_histogram(const io::Table& table, std::string label) {
  const auto& lo = table.column("bin_left");
  const auto& hi = table.column("bin_right");
  const auto& v = table.column("value");
  Series s;
  s.label = std::move(label);
  s.style = Style::step;
  for (std::size_t i = 0; i < v.size(); ++i) {
    s.x.push_back(lo[i]);
    s.y.push_back(v[i]);
    s.x.push_back(hi[i]);
    s.y.push_back(v[i]);
  }
  return s;
}

}  // namespace crystallize::svg
