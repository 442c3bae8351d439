#include "crystallize/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace crystallize::io {

std::string format_number(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

nlohmann::json to_json(const TrigPolynomial& f) {
  nlohmann::json j;
  j["degree"] = f.degree();
  j["a"] = std::vector<double>(f.cos_coeffs().data(), f.cos_coeffs().data() + f.cos_coeffs().size());
  j["b"] = std::vector<double>(f.sin_coeffs().data(), f.sin_coeffs().data() + f.sin_coeffs().size());
  return j;
}

TrigPolynomial polynomial_from_json(const nlohmann::json& j) {
  const int degree = j.at("degree").get<int>();
  const auto a = j.at("a").get<std::vector<double>>();
  const auto b = j.at("b").get<std::vector<double>>();
  if (degree < 0 || a.size() != static_cast<std::size_t>(degree) + 1 || b.size() != a.size()) {
    throw std::invalid_argument("polynomial JSON: \"a\" and \"b\" must both have degree + 1 entries");
  }
  return {Eigen::Map<const Eigen::VectorXd>(a.data(), static_cast<Eigen::Index>(a.size())),
          Eigen::Map<const Eigen::VectorXd>(b.data(), static_cast<Eigen::Index>(b.size()))};
}

nlohmann::json to_json(const RootSet& roots) {
  nlohmann::json j;
  j["real"] = roots.real_roots;
  auto complex = nlohmann::json::array();
  if (roots.complex_roots) {
    for (const auto& z : *roots.complex_roots) complex.push_back({z.real(), z.imag()});
  }
  j["complex"] = std::move(complex);
  j["method"] = std::string(to_string(roots.method));
  return j;
}

std::string roots_csv(const RootSet& roots) {
  std::string out;
  for (double x : roots.real_roots) out += format_number(x) + "\n";
  return out;
}

std::string histogram_csv(const Histogram& h) {
  std::string out = "bin_left,bin_right,value\n";
  for (std::size_t i = 0; i < h.bins(); ++i) {
    out += format_number(h.edges[i]) + "," + format_number(h.edges[i + 1]) + "," + format_number(h.values[i]) + "\n";
  }
  return out;
}

nlohmann::json sidecar_json(const PairCorrelationEstimate& est) {
  nlohmann::json j;
  j["degree"] = est.ensemble.degree;
  j["derivative_order"] = est.ensemble.derivative_order;
  j["realizations"] = est.ensemble.realizations;
  j["master_seed"] = est.ensemble.master_seed;
  j["bin_width"] = est.histogram.bins() ? est.histogram.bin_width(0) : 0.0;
  j["max_range"] = est.max_range;
  j["pair_count"] = est.pair_count;
  j["normalization"] = to_string(est.histogram.normalization);
  j["rescale"] = est.rescale;
  return j;
}

std::string columns_csv(std::span<const std::string> header, std::span<const std::vector<double>> columns) {
  if (header.size() != columns.size()) throw std::invalid_argument("columns_csv: header/column count mismatch");
  std::string out;
  for (std::size_t c = 0; c < header.size(); ++c) out += (c ? "," : "") + header[c];
  out += "\n";
  const std::size_t rows = columns.empty() ? 0 : columns[0].size();
  for (const auto& col : columns) {
    if (col.size() != rows) throw std::invalid_argument("columns_csv: ragged columns");
  }
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) out += (c ? "," : "") + format_number(columns[c][r]);
    out += "\n";
  }
  return out;
}

const std::vector<double>& Table::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return columns[i];
  }
  throw std::out_of_range("csv: no column named " + std::string(name));
}

Table parse_csv(std::string_view text) {
  Table t;
  std::istringstream in{std::string(text)};
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.emplace_back();
    if (first) {
      t.header = cells;
      t.columns.assign(cells.size(), {});
      first = false;
      continue;
    }
    if (cells.size() != t.header.size()) throw std::invalid_argument("csv: row width differs from header");
    for (std::size_t i = 0; i < cells.size(); ++i) t.columns[i].push_back(cells[i].empty() ? std::nan("") : std::stod(cells[i]));
  }
  return t;
}

}  // namespace crystallize::io
