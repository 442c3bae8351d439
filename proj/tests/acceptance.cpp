// Acceptance checks, one line per criterion. Usage: acceptance [--criterion k]
#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "crystallize/analytic.hpp"
#include "crystallize/asymptotics.hpp"
#include "crystallize/cli.hpp"
#include "crystallize/ensemble.hpp"
#include "crystallize/quadrature.hpp"
#include "crystallize/rootfind.hpp"
#include "crystallize/statistics.hpp"

using namespace crystallize;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

constexpr std::uint64_t kSeed = 20240601;

Outcome kac_rice_limit() {
  const double e0 = std::abs(limiting_real_fraction(0) - 1.0 / std::sqrt(3.0));
  const double v49 = limiting_real_fraction(49), v48 = limiting_real_fraction(48);
  return {e0 < 1e-12 && v49 >= 0.99 && v48 < 0.99,
          fmt::format("|v_0 - 1/sqrt3| = {:.2e}, v_48 = {:.6f}, v_49 = {:.6f}", e0, v48, v49)};
}

Outcome kac_rice_finite() {
  const double f = expected_real_fraction_finite_n(30, 10);
  const double excess = f - limiting_real_fraction(10);
  return {std::abs(f - 0.9696) <= 1e-4 && std::abs(excess - 0.014) <= 1e-3,
          fmt::format("finite-N fraction(30, 10) = {:.6f}, excess over v_10 = {:.5f}", f, excess)};
}

Outcome monte_carlo_fraction() {
  bool ok = true;
  std::string detail;
  for (int p : {0, 4}) {
    const auto est = empirical_real_fraction(EnsembleSpec::equal_variance(100, p, 2000, kSeed));
    const double expect = expected_real_fraction_finite_n(100, p);
    const double z = std::abs(est.mean - expect) / est.stderr_;
    ok = ok && z < 3.0 && (p == 0 || expect > 0.90);
    detail += fmt::format("p={}: {:.5f} +- {:.5f} vs {:.5f} ({:.2f} sigma); ", p, est.mean, est.stderr_, expect, z);
  }
  detail.resize(detail.size() - 2);
  return {ok, detail};
}

Outcome empirical_pair_correlation_check() {
  const int N = 64;
  EnsembleRunOptions opts;
  opts.threads = default_thread_count();
  const auto roots = ensemble_rescaled_roots(EnsembleSpec::equal_variance(N, 0, 10000, kSeed), opts);
  const auto est = empirical_pair_correlation(roots, N, 0.05, 6.0);
  const auto& h = est.histogram;
  double worst = 0.0, plateau = 0.0;
  int plateau_bins = 0;
  for (std::size_t b = 0; b < h.bins(); ++b) {
    const double x = h.bin_center(b);
    if (x >= 0.2 && x <= 4.0) worst = std::max(worst, std::abs(h.values[b] - pair_correlation_limit(0, x)));
    if (x >= 4.0) plateau += h.values[b], ++plateau_bins;
  }
  plateau /= plateau_bins;
  const double rel = std::abs(plateau - 1.0 / 3.0) * 3.0;
  return {worst < 0.02 && rel < 0.05,
          fmt::format("max |empirical - limit| on [0.2, 4] = {:.4f}, plateau on [4, 6) = {:.4f} ({:.1f}% from 1/3)", worst,
                      plateau, 100 * rel)};
}

Outcome theorem_profile_check() {
  std::vector<double> dev;
  for (int p : {10, 20, 40, 80}) {
    double worst = 0.0;
    for (int i = 0; i <= 120; ++i) {
      const double u = -3.0 + 0.05 * i;
      const double r = pair_correlation_limit(p, 1.0 + 0.5 / p + u / p) / p;
      worst = std::max(worst, std::abs(r - nn_density(u)));
    }
    dev.push_back(worst);
  }
  bool ok = true;
  std::string ratios;
  for (std::size_t i = 1; i < dev.size(); ++i) {
    const double r = dev[i] / dev[i - 1];
    ok = ok && r >= 0.35 && r <= 0.65;
    ratios += fmt::format("{}{:.3f}", i > 1 ? ", " : "", r);
  }
  return {ok, fmt::format("max deviation {:.4f}, {:.4f}, {:.4f}, {:.4f}; successive ratios {}", dev[0], dev[1], dev[2],
                          dev[3], ratios)};
}

Outcome repulsion_check() {
  const double h = 1e-3;
  bool ok = true;
  std::string detail;
  for (int p : {0, 1, 3, 10}) {
    const double fd = pair_correlation_limit(p, h) / h;
    const double rel = std::abs(fd / repulsion_slope(p) - 1.0);
    ok = ok && rel < 1e-4;
    detail += fmt::format("p={} rel {:.1e}; ", p, rel);
  }
  const double limit = 50.0 * 50.0 * repulsion_slope(50) / (pi * pi / 8);
  ok = ok && std::abs(limit - 1.0) < 0.02;
  detail += fmt::format("p^2 slope / (pi^2/8) at p=50 = {:.4f}", limit);
  return {ok, detail};
}

Outcome nearest_neighbor_check() {
  const int N = 256, p = 20;
  EnsembleRunOptions opts;
  opts.threads = default_thread_count();
  const auto roots = ensemble_rescaled_roots(EnsembleSpec::equal_variance(N, p, 2000, kSeed), opts);
  std::vector<double> u;
  for (double s : nearest_neighbor_gaps(roots, N)) u.push_back(p * (s - 1.0 - 0.5 / p));
  const double ks = kolmogorov_smirnov_distance(u, nn_cdf);
  const double mass = quadrature::integrate_real_line(nn_density).value;
  return {ks < 0.05 && std::abs(mass - 1.0) < 1e-10,
          fmt::format("KS distance {:.4f} over {} gaps, profile mass - 1 = {:.1e}", ks, u.size(), mass - 1.0)};
}

Outcome root_oracle_check() {
  std::mt19937_64 rng(kSeed);
  std::uniform_int_distribution<int> deg(1, 40), order(0, 8);
  double worst = 0.0;
  int mismatched = 0;
  for (int i = 0; i < 100; ++i) {
    const int N = deg(rng), p = order(rng);
    const auto f = sample_derivative(EnsembleSpec::equal_variance(N, p, 100, kSeed + 1), i);
    const auto s = real_roots_sampled(f).real_roots;
    const auto c = all_roots_companion(f).real_roots;
    if (s.size() != c.size()) {
      ++mismatched;
      continue;
    }
    for (double x : s) {
      double best = 1e300;
      for (double y : c) {
        const double d = std::abs(x - y);
        best = std::min(best, std::min(d, 2 * pi - d));
      }
      worst = std::max(worst, best);
    }
  }
  return {mismatched == 0 && worst < 1e-8,
          fmt::format("count mismatches {}, max position discrepancy {:.2e}", mismatched, worst)};
}

Outcome triple_zero_check() {
  const double a = triple_zero_transition(0.9, 1.2);
  const int below = triple_zero_demo(0.92).derivative_zeros;
  const int above = triple_zero_demo(1.1).derivative_zeros;
  return {std::abs(a - 2.0 / (pi * pi - 8.0)) < 1e-4 && below == 3 && above == 1,
          fmt::format("transition at a = {:.6f} (target 2/(pi^2-8) = {:.6f}); zeros at a=0.92: {}, at a=1.1: {}", a,
                      2.0 / (pi * pi - 8.0), below, above)};
}

Outcome series_check() {
  auto rel = [](int p) {
    const double q = limit_terms(p, 0.7).c;
    return std::abs(series_abc(p, 0.7).c - q) / std::abs(q);
  };
  const double r100 = rel(100), r1000 = rel(1000);
  const double peak = peak_location(1, 10);
  return {r100 / r1000 >= 10.0 && std::abs(peak - 1.05) < 5.0 / 100,
          fmt::format("C_p relative error {:.2e} (p=100), {:.2e} (p=1000), ratio {:.0f}; peak_location(1, 10) = {:.6f}",
                      r100, r1000, r100 / r1000, peak)};
}

Outcome determinism_check() {
  int compared = 0, differing = 0;
  for (auto command : {cli::Command::fraction, cli::Command::paircorr, cli::Command::spacing}) {
    cli::RunConfig c;
    c.command = command;
    c.N = 48;
    c.p = 3;
    c.realizations = 300;
    c.seed = kSeed;
    c.mode = cli::Mode::empirical;
    c.threads = 1;
    const auto serial = cli::compute(c);
    c.threads = 8;
    const auto parallel = cli::compute(c);
    for (const auto& [name, content] : serial.files) {
      if (!name.ends_with(".csv")) continue;
      ++compared;
      if (parallel.files.at(name) != content) ++differing;
    }
  }
  return {compared > 0 && differing == 0,
          fmt::format("{} CSV files compared between 1 and 8 threads, {} differ", compared, differing)};
}

const std::pair<const char*, std::function<Outcome()>> kCriteria[] = {
    {"v_p limit values", kac_rice_limit},
    {"finite-N Kac-Rice", kac_rice_finite},
    {"Monte Carlo vs Kac-Rice", monte_carlo_fraction},
    {"empirical vs analytic pair correlation", empirical_pair_correlation_check},
    {"peak profile convergence", theorem_profile_check},
    {"repulsion slope", repulsion_check},
    {"nearest-neighbor law", nearest_neighbor_check},
    {"root-finder equivalence", root_oracle_check},
    {"triple-zero threshold", triple_zero_check},
    {"series validation", series_check},
    {"determinism", determinism_check},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0) only = std::atoi(argv[i + 1]);
  }
  if (only < 0 || only > 11) {
    fmt::print(stderr, "usage: acceptance [--criterion 1..11]\n");
    return 2;
  }
  int failed = 0;
  for (int k = 1; k <= 11; ++k) {
    if (only && k != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = kCriteria[k - 1].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    fmt::print("[{}] criterion {:2}: {}: {} ({:.1f}s)\n", o.pass ? "PASS" : "FAIL", k, kCriteria[k - 1].first, o.detail,
               secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}
