#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "crystallize/poly.hpp"
#include "crystallize/rootfind.hpp"
#include "crystallize/statistics.hpp"

namespace crystallize::io {

/// Shortest round-trip decimal ("%.17g"); the only float formatting used in outputs.
std::string format_number(double v);

/// {"degree": N, "a": [...], "b": [...]}
nlohmann::json to_json(const TrigPolynomial& f);
TrigPolynomial polynomial_from_json(const nlohmann::json& j);

/// {"real": [...], "complex": [[re, im], ...], "method": "sampled" | "companion"}
nlohmann::json to_json(const RootSet& roots);

/// One real root per line.
std::string roots_csv(const RootSet& roots);

/// Header "bin_left,bin_right,value".
std::string histogram_csv(const Histogram& h);

/// Ensemble metadata written next to a pair-correlation CSV.
nlohmann::json sidecar_json(const PairCorrelationEstimate& est);

/// Columns named by `header`, e.g. {"x", "R2"}; every column has the same length.
std::string columns_csv(std::span<const std::string> header, std::span<const std::vector<double>> columns);

/// Minimal CSV reader for files produced by the writers above.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  const std::vector<double>& column(std::string_view name) const;
};

Table parse_csv(std::string_view text);

}  // namespace crystallize::io
