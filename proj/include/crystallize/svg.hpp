#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crystallize/io.hpp"

namespace crystallize::svg {

enum class Style { line, step, dashed };

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  Style style = Style::line;
  std::string color = "#1f4e9c";
};

struct Plot {
  std::string title;
  std::string x_label = "x";
  std::string y_label;
  double width = 640;
  double height = 400;
  std::optional<double> y_min;
  std::optional<double> y_max;
};

/// Static SVG with axes, ticks, a legend and one polyline per series.
std::string render(const Plot& plot, std::span<const Series> series);

/// Series from two named columns of a parsed CSV.
Series from_columns(const io::Table& table, const std::string& x, const std::string& y, std::string label);

/// Step series from a "bin_left,bin_right,value" histogram CSV.
Series from_histogram(const io::Table& table, std::string label);

}  // namespace crystallize::svg
