#include <cmath>
#include <numeric>

#include "doctest.h"

#include "crystallize/analytic.hpp"
#include "crystallize/ensemble.hpp"
#include "crystallize/io.hpp"
#include "crystallize/statistics.hpp"

using namespace crystallize;

namespace {

std::vector<double> lattice(int N) {
  std::vector<double> x;
  for (int k = 0; k < 2 * N; ++k) x.push_back(0.5 + k);
  return x;
}

}  // namespace

TEST_CASE("rescale_zeros") {
  const int N = 5;
  std::vector<double> roots;
  for (int k = 0; k < 2 * N; ++k) roots.push_back(std::numbers::pi / (2 * N) + k * std::numbers::pi / N);
  const auto r = rescale_zeros(roots, N);
  for (int k = 0; k < 2 * N; ++k) CHECK(r[k] == doctest::Approx(0.5 + k));
  CHECK(rescale_zeros({}, N).empty());
}

TEST_CASE("rigid lattice pair correlation") {
  const int N = 16;
  const std::vector<std::vector<double>> sets(3, lattice(N));
  const auto est = empirical_pair_correlation(sets, N, 0.05, 6.0);
  const auto& h = est.histogram;
  REQUIRE(h.bins() == 120);
  for (std::size_t b = 0; b < h.bins(); ++b) {
    const bool holds_integer = std::floor(h.edges[b + 1] - 1e-12) >= std::ceil(h.edges[b]) && h.edges[b] > 0.5;
    if (holds_integer) {
      CHECK(h.values[b] == doctest::Approx(1.0 / 0.05));
    } else {
      CHECK(h.counts[b] == 0);
    }
  }
  CHECK(est.pair_count == 3 * 2 * N * 5);
}

TEST_CASE("rigid lattice gaps are exactly 1") {
  const std::vector<std::vector<double>> sets(2, lattice(9));
  for (double g : nearest_neighbor_gaps(sets, 9)) CHECK(g == 1.0);
  const auto h = nearest_neighbor_spacings(sets, 9);
  CHECK(h.values[h.locate(1.0)] == doctest::Approx(1.0 / 0.05));
}

TEST_CASE("pair correlation matches a brute-force folded count") {
  const int N = 24;
  const auto roots = ensemble_rescaled_roots(EnsembleSpec::equal_variance(N, 1, 40, 8));
  const double w = 0.1, range = 7.0;
  const auto est = empirical_pair_correlation(roots, N, w, range);
  std::vector<std::int64_t> folded(est.histogram.bins(), 0);
  std::int64_t ordered_both = 0;
  for (const auto& r : roots) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      for (std::size_t j = i + 1; j < r.size(); ++j) {
        const double d = r[j] - r[i];
        const double f = std::min(d, 2.0 * N - d);
        if (d < range) ++ordered_both;
        if (2.0 * N - d < range) ++ordered_both;
        const auto b = est.histogram.locate(f);
        if (b >= 0) ++folded[static_cast<std::size_t>(b)];
      }
    }
  }
  CHECK(est.histogram.counts == folded);
  CHECK(est.pair_count == ordered_both);

  // total pair mass
  const double mass = std::accumulate(est.histogram.values.begin(), est.histogram.values.end(), 0.0) * w * 2 * N *
                      static_cast<double>(roots.size());
  CHECK(mass == doctest::Approx(static_cast<double>(est.pair_count)).epsilon(1e-12));
}

TEST_CASE("mean gap is total length over number of gaps") {
  const int N = 30;
  const auto roots = ensemble_rescaled_roots(EnsembleSpec::equal_variance(N, 10, 200, 31));
  const auto gaps = nearest_neighbor_gaps(roots, N);
  double length = 0.0;
  std::size_t count = 0;
  for (const auto& r : roots) {
    if (r.size() < 2) continue;
    length += 2.0 * N;
    count += r.size();
  }
  const double mean = std::accumulate(gaps.begin(), gaps.end(), 0.0) / static_cast<double>(gaps.size());
  CHECK(gaps.size() == count);
  CHECK(mean == doctest::Approx(length / static_cast<double>(count)).epsilon(1e-12));
  // about 1 / 0.9696 for this ensemble
  CHECK(mean == doctest::Approx(1.0 / expected_real_fraction_finite_n(N, 10)).epsilon(0.005));
}

TEST_CASE("statistics are unchanged by rescaling the coefficients") {
  const int N = 20, M = 60;
  const auto spec = EnsembleSpec::equal_variance(N, 2, M, 4);
  std::vector<std::vector<double>> r1, r2;
  for (int i = 0; i < M; ++i) {
    const auto f = sample_derivative(spec, i);
    r1.push_back(rescale_zeros(real_roots_sampled(f).real_roots, N));
    r2.push_back(rescale_zeros(real_roots_sampled(f.scaled(-3.7)).real_roots, N));
  }
  for (int i = 0; i < M; ++i) {
    REQUIRE(r1[i].size() == r2[i].size());
    for (std::size_t k = 0; k < r1[i].size(); ++k) CHECK(std::abs(r1[i][k] - r2[i][k]) < 1e-10);
  }
  CHECK(empirical_pair_correlation(r1, N, 0.05, 6).histogram.values ==
        empirical_pair_correlation(r2, N, 0.05, 6).histogram.values);
  CHECK(nearest_neighbor_spacings(r1, N).values == nearest_neighbor_spacings(r2, N).values);
  CHECK(real_fraction_of(r1, N).mean == real_fraction_of(r2, N).mean);
}

TEST_CASE("results do not depend on the worker count") {
  const auto spec = EnsembleSpec::equal_variance(32, 0, 64, 123);
  EnsembleRunOptions one, four;
  four.threads = 4;
  CHECK(ensemble_rescaled_roots(spec, one) == ensemble_rescaled_roots(spec, four));
  CHECK(empirical_real_fraction(spec, one).mean == empirical_real_fraction(spec, four).mean);
}

TEST_CASE("real fraction estimates") {
  Eigen::VectorXd s = Eigen::VectorXd::Zero(11);
  s(10) = 1.0;
  const auto top = empirical_real_fraction({10, 0, VarianceProfile(s), 20, 3});
  CHECK(top.mean == 1.0);
  CHECK(top.stderr_ == 0.0);

  const auto est = empirical_real_fraction(EnsembleSpec::equal_variance(60, 0, 400, 17));
  CHECK(std::abs(est.mean - expected_real_fraction_finite_n(60, 0)) < 4 * est.stderr_);
  CHECK_THROWS(empirical_real_fraction(EnsembleSpec::equal_variance(10, 0, 1, 1)));
}

TEST_CASE("estimator errors") {
  const std::vector<std::vector<double>> none;
  CHECK_THROWS_AS(empirical_pair_correlation(none, 8, 0.05, 4), std::invalid_argument);
  const std::vector<std::vector<double>> one{lattice(8)};
  CHECK_THROWS_AS(empirical_pair_correlation(one, 8, 5.0, 4.0), std::invalid_argument);
  CHECK_THROWS_AS(empirical_pair_correlation(one, 8, 0.05, 9.0), std::invalid_argument);
  const std::vector<std::vector<double>> sparse{{1.0}, {}};
  CHECK_THROWS_AS(nearest_neighbor_spacings(sparse, 8), std::invalid_argument);
}

TEST_CASE("Kolmogorov-Smirnov distance") {
  std::vector<double> u;
  for (int i = 0; i < 1000; ++i) u.push_back((i + 0.5) / 1000.0);
  CHECK(kolmogorov_smirnov_distance(u, [](double x) { return x; }) == doctest::Approx(0.0005));
}

TEST_CASE("histogram CSV and sidecar") {
  const std::vector<std::vector<double>> sets(2, lattice(8));
  auto est = empirical_pair_correlation(sets, 8, 0.5, 3.0);
  const auto csv = io::histogram_csv(est.histogram);
  CHECK(csv.rfind("bin_left,bin_right,value\n", 0) == 0);
  const auto t = io::parse_csv(csv);
  CHECK(t.column("value").size() == 6);
  const auto j = io::sidecar_json(est);
  CHECK(j.at("normalization") == "pair-correlation");
  CHECK(j.at("pair_count") == est.pair_count);
}
