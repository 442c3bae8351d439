#include "crystallize/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace crystallize {

std::string to_string(Normalization n) {
  switch (n) {
    case Normalization::raw: return "raw";
    case Normalization::density: return "density";
    case Normalization::pair_correlation: return "pair-correlation";
  }
  return "raw";
}

Histogram Histogram::uniform(double lo, double hi, double width) {
  if (!(width > 0.0) || !(hi > lo)) throw std::invalid_argument("Histogram: need width > 0 and hi > lo");
  const auto bins = static_cast<std::size_t>(std::ceil((hi - lo) / width - 1e-9));
  Histogram h;
  h.edges.resize(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) h.edges[i] = lo + width * static_cast<double>(i);
  if (std::abs(h.edges[bins] - hi) < 1e-9 * width) h.edges[bins] = hi;
  h.counts.assign(bins, 0);
  h.values.assign(bins, 0.0);
  return h;
}

std::ptrdiff_t Histogram::locate(double x) const {
  if (edges.empty() || x < edges.front() || x >= edges.back()) return -1;
  auto b = static_cast<std::ptrdiff_t>((x - edges.front()) / (edges[1] - edges[0]));
  const auto last = static_cast<std::ptrdiff_t>(bins()) - 1;
  b = std::clamp<std::ptrdiff_t>(b, 0, last);
  // the division can land one bin off next to an edge
  while (b > 0 && x < edges[static_cast<std::size_t>(b)]) --b;
  while (b < last && x >= edges[static_cast<std::size_t>(b) + 1]) ++b;
  return b;
}

EnsembleSummary EnsembleSummary::of(const EnsembleSpec& spec) {
  return {spec.degree, spec.derivative_order, spec.realizations, spec.master_seed};
}

std::vector<double> rescale_zeros(std::span<const double> roots, int N) {
  std::vector<double> out;
  out.reserve(roots.size());
  for (double x : roots) out.push_back(N * x / std::numbers::pi);
  return out;
}

PairCorrelationEstimate empirical_pair_correlation(std::span<const std::vector<double>> rootsets, int N,
                                                   double bin_width, double max_range) {
  if (rootsets.empty()) throw std::invalid_argument("empirical_pair_correlation: empty ensemble");
  if (!(bin_width > 0.0) || bin_width >= max_range) {
    throw std::invalid_argument("empirical_pair_correlation: need 0 < bin_width < max_range");
  }
  if (max_range > N) throw std::invalid_argument("empirical_pair_correlation: max_range must be <= N");

  const double period = 2.0 * N;
  PairCorrelationEstimate est;
  est.max_range = max_range;
  est.histogram = Histogram::uniform(0.0, max_range, bin_width);
  auto& counts = est.histogram.counts;

  for (const auto& roots : rootsets) {
    const std::size_t k = roots.size();
    for (std::size_t i = 0; i < k; ++i) {
      // walk forward around the circle until the separation leaves the window
      for (std::size_t step = 1; step < k; ++step) {
        const std::size_t j = (i + step) % k;
        double d = roots[j] - roots[i];
        if (d < 0.0) d += period;
        if (d >= max_range) break;
        const auto b = est.histogram.locate(d);
        if (b >= 0) {
          ++counts[static_cast<std::size_t>(b)];
          ++est.pair_count;
        }
      }
    }
  }
  const double scale = 1.0 / (static_cast<double>(rootsets.size()) * period * bin_width);
  for (std::size_t b = 0; b < counts.size(); ++b) est.histogram.values[b] = static_cast<double>(counts[b]) * scale;
  est.histogram.normalization = Normalization::pair_correlation;
  est.ensemble.degree = N;
  est.ensemble.realizations = static_cast<std::int64_t>(rootsets.size());
  return est;
}

std::vector<double> nearest_neighbor_gaps(std::span<const std::vector<double>> rootsets, int N) {
  const double period = 2.0 * N;
  std::vector<double> gaps;
  for (const auto& roots : rootsets) {
    if (roots.size() < 2) continue;
    for (std::size_t i = 0; i + 1 < roots.size(); ++i) gaps.push_back(roots[i + 1] - roots[i]);
    gaps.push_back(roots.front() + period - roots.back());
  }
  return gaps;
}

Histogram nearest_neighbor_spacings(std::span<const std::vector<double>> rootsets, int N,
                                    const SpacingOptions& options) {
  const std::vector<double> gaps = nearest_neighbor_gaps(rootsets, N);
  if (gaps.empty()) throw std::invalid_argument("nearest_neighbor_spacings: no realization has two or more zeros");
  double hi = options.max_spacing;
  if (hi <= 0.0) {
    const double largest = *std::max_element(gaps.begin(), gaps.end());
    hi = options.bin_width * (std::floor(largest / options.bin_width) + 1.0);
  }
  Histogram h = Histogram::uniform(0.0, hi, options.bin_width);
  for (double g : gaps) {
    const auto b = h.locate(g);
    if (b >= 0) ++h.counts[static_cast<std::size_t>(b)];
  }
  const double total = static_cast<double>(gaps.size());
  for (std::size_t b = 0; b < h.counts.size(); ++b) {
    h.values[b] = static_cast<double>(h.counts[b]) / (total * h.bin_width(b));
  }
  h.normalization = Normalization::density;
  return h;
}

FractionEstimate real_fraction_of(std::span<const std::vector<double>> rootsets, int N) {
  const double M = static_cast<double>(rootsets.size());
  if (rootsets.size() < 2) throw std::invalid_argument("real_fraction: need at least two realizations");
  double mean = 0.0;
  for (const auto& r : rootsets) mean += static_cast<double>(r.size()) / (2.0 * N);
  mean /= M;
  double ss = 0.0;
  for (const auto& r : rootsets) {
    const double d = static_cast<double>(r.size()) / (2.0 * N) - mean;
    ss += d * d;
  }
  return {mean, std::sqrt(ss / (M - 1.0)) / std::sqrt(M)};
}

FractionEstimate empirical_real_fraction(const EnsembleSpec& spec, const EnsembleRunOptions& options) {
  if (spec.realizations < 2) throw std::invalid_argument("empirical_real_fraction: need at least two realizations");
  const auto roots = ensemble_real_roots(spec, options);
  return real_fraction_of(roots, spec.degree);
}

}  // namespace crystallize
