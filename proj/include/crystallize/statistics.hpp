#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "crystallize/ensemble.hpp"
#include "crystallize/poly.hpp"

namespace crystallize {

enum class Normalization { raw, density, pair_correlation };

std::string to_string(Normalization n);

struct Histogram {
  std::vector<double> edges;          // increasing, size = bins + 1
  std::vector<std::int64_t> counts;   // raw tallies per bin
  std::vector<double> values;         // counts after normalization
  Normalization normalization = Normalization::raw;

  std::size_t bins() const { return counts.size(); }
  double bin_width(std::size_t i) const { return edges[i + 1] - edges[i]; }
  double bin_center(std::size_t i) const { return 0.5 * (edges[i] + edges[i + 1]); }
  // Bin holding x under [left, right) edges, or -1 outside the range.
  std::ptrdiff_t locate(double x) const;

  static Histogram uniform(double lo, double hi, double width);
};

struct EnsembleSummary {
  int degree = 0;
  int derivative_order = 0;
  std::int64_t realizations = 0;
  std::uint64_t master_seed = 0;

  static EnsembleSummary of(const EnsembleSpec& spec);
};

struct PairCorrelationEstimate {
  Histogram histogram;
  EnsembleSummary ensemble;
  std::int64_t pair_count = 0;  // ordered pairs that landed in [0, max_range)
  double max_range = 0.0;
  std::string rescale = "N*x/pi";
};

/// x -> N x / pi, so all 2N zeros have unit mean spacing on [0, 2N).
std::vector<double> rescale_zeros(std::span<const double> roots, int N);

/// Histogram of circular differences (mod 2N) over ordered pairs i != j of
/// each realization, scaled by 1/(M * 2N * bin_width). An uncorrelated
/// process of density v converges to v^2 in every bin.
PairCorrelationEstimate empirical_pair_correlation(std::span<const std::vector<double>> rootsets, int N,
                                                   double bin_width, double max_range);

/// Circular gaps between consecutive zeros of each realization (period 2N).
/// Realizations with fewer than two zeros contribute nothing.
std::vector<double> nearest_neighbor_gaps(std::span<const std::vector<double>> rootsets, int N);

struct SpacingOptions {
  double bin_width = 0.05;
  double max_spacing = 0.0;  // <= 0: cover the largest gap
};

/// Density-normalized histogram of nearest_neighbor_gaps.
Histogram nearest_neighbor_spacings(std::span<const std::vector<double>> rootsets, int N,
                                    const SpacingOptions& options = {});

struct FractionEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
};

/// Mean and standard error of fraction_real over the ensemble (sampled roots).
FractionEstimate empirical_real_fraction(const EnsembleSpec& spec, const EnsembleRunOptions& options = {});

/// Same, from already computed real-root lists.
FractionEstimate real_fraction_of(std::span<const std::vector<double>> rootsets, int N);

/// Two-sided Kolmogorov-Smirnov distance between a sample and a continuous CDF.
template <typename Cdf>
double kolmogorov_smirnov_distance(std::vector<double> sample, Cdf cdf);

}  // namespace crystallize

#include <algorithm>
#include <cmath>

template <typename Cdf>
double crystallize::kolmogorov_smirnov_distance(std::vector<double> sample, Cdf cdf) {
  if (sample.empty()) return 1.0;
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double F = cdf(sample[i]);
    d = std::max({d, std::abs(F - static_cast<double>(i) / n), std::abs(static_cast<double>(i + 1) / n - F)});
  }
  return d;
}
