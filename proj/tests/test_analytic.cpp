#include <cmath>
#include <numbers>

#include "doctest.h"

#include "crystallize/analytic.hpp"
#include "crystallize/quadrature.hpp"

using namespace crystallize;
using std::numbers::pi;

TEST_CASE("limiting real fraction") {
  CHECK(std::abs(limiting_real_fraction(0) - 1.0 / std::sqrt(3.0)) < 1e-15);
  CHECK(limiting_real_fraction(4) == doctest::Approx(std::sqrt(9.0 / 11.0)));
  CHECK(limiting_real_fraction(49) >= 0.99);
  CHECK(limiting_real_fraction(48) < 0.99);
  CHECK((1.0 - limiting_real_fraction(1000)) * 2000 == doctest::Approx(1.0).epsilon(2e-3));
}

TEST_CASE("finite-N Kac-Rice fraction") {
  CHECK(expected_real_fraction_finite_n(30, 0) == doctest::Approx(std::sqrt(9455.0 / 31.0) / 30.0).epsilon(1e-14));
  const double f = expected_real_fraction_finite_n(30, 10);
  CHECK(std::abs(f - 0.9696) < 1e-4);
  CHECK(std::abs(f - limiting_real_fraction(10) - 0.014) < 1e-3);
  // scaled sums keep very large p finite
  const double big = expected_real_fraction_finite_n(4096, 500);
  CHECK(std::isfinite(big));
  CHECK(big < 1.0);
  CHECK(big > limiting_real_fraction(500));
}

TEST_CASE("Kac-Rice density and fraction routes agree") {
  for (int N : {1, 7, 30, 100}) {
    for (int p : {0, 1, 4, 10}) {
      const auto profile = VarianceProfile::derivative(N, p);
      CHECK(expected_real_fraction(profile) == doctest::Approx(expected_real_fraction_finite_n(N, p)).epsilon(1e-13));
      CHECK(kac_rice_density(profile) * pi / N == doctest::Approx(expected_real_fraction(profile)).epsilon(1e-14));
      const auto in = kac_rice_inputs(profile);
      CHECK(in.c == 0.0);
      CHECK(in.delta2 == doctest::Approx(in.a2 * in.b2));
    }
  }
  CHECK(kac_rice_density(VarianceProfile::top_mode(9)) == doctest::Approx(9 / pi));
}

TEST_CASE("finite-N BBL terms against a direct long double sum") {
  const int N = 12;
  const auto profile = VarianceProfile::derivative(N, 2);
  for (double tau : {0.05, 0.3, 1.0, 2.5}) {
    long double g[5] = {};
    for (int n = 1; n <= N; ++n) {
      const long double s2 = std::pow(static_cast<long double>(n) / N, 4);
      g[0] += s2;
      g[1] += n * n * s2;
      g[2] += s2 * std::cos(n * tau);
      g[3] += n * s2 * std::sin(n * tau);
      g[4] += n * n * s2 * std::cos(n * tau);
    }
    const auto t = bbl_terms(profile, tau);
    CHECK(t.g1 == doctest::Approx(static_cast<double>(g[0])).epsilon(1e-14));
    CHECK(t.g3 == doctest::Approx(static_cast<double>(g[2])).epsilon(1e-12));
    CHECK(t.g4 == doctest::Approx(static_cast<double>(g[3])).epsilon(1e-12));
    CHECK(t.c == doctest::Approx(static_cast<double>(g[0] * g[0] - g[2] * g[2])).epsilon(1e-10));
    CHECK(std::abs(t.b) <= std::abs(t.a));
    CHECK(pair_correlation_finite_n(profile, tau) >= 0.0);
  }
  CHECK_THROWS_WITH(pair_correlation_finite_n(profile, 0.0), doctest::Contains("degenerate separation"));
}

TEST_CASE("finite-N curve converges to the limit") {
  double previous = 1e300;
  for (int N : {16, 32, 64, 128}) {
    const auto profile = VarianceProfile::equal(N);
    double worst = 0.0;
    for (double x = 0.2; x <= 4.0 + 1e-9; x += 0.01) {
      worst = std::max(worst, std::abs(pair_correlation_finite_n_rescaled(profile, x) - pair_correlation_limit(0, x)));
    }
    CHECK(worst < previous);
    previous = worst;
  }
  CHECK(previous < 0.01);
}

TEST_CASE("g-integrals: closed forms") {
  const auto one = g_limit_integrals(0, 1.0);
  CHECK(std::abs(one.g3) < 1e-14);
  CHECK(one.g4 == doctest::Approx(1.0 / pi).epsilon(1e-12));
  for (int p : {0, 3, 20}) {
    const auto z = g_limit_integrals(p, 0.0);
    CHECK(z.g3 == doctest::Approx(1.0 / (2 * p + 1)));
    CHECK(z.g4 == 0.0);
    CHECK(z.g5 == doctest::Approx(1.0 / (2 * p + 3)));
  }
}

TEST_CASE("g-integrals: quadrature and recurrence agree") {
  for (int p = 0; p <= 5; ++p) {
    for (double x : {0.1, 0.5, 1.0, 2.0, 5.0}) {
      const auto q = g_limit_integrals(p, x);
      const auto r = g_limit_integrals_recurrence(p, x);
      const double scale = 1.0 / (2 * p + 1);
      CHECK(std::abs(q.g3 - r.g3) <= 1e-9 * std::max(std::abs(r.g3), 1e-3 * scale));
      CHECK(std::abs(q.g4 - r.g4) <= 1e-9 * std::max(std::abs(r.g4), 1e-3 * scale));
      CHECK(std::abs(q.g5 - r.g5) <= 1e-9 * std::max(std::abs(r.g5), 1e-3 * scale));
    }
  }
}

TEST_CASE("g-integrals: series and quadrature agree") {
  for (int p : {0, 2, 10, 60}) {
    for (double x : {0.01, 0.1, 0.3}) {
      const auto q = g_limit_integrals(p, x);
      const auto s = g_limit_integrals_series(p, x);
      CHECK(s.g3 == doctest::Approx(q.g3).epsilon(1e-12));
      CHECK(s.g4 == doctest::Approx(q.g4).epsilon(1e-11));
      CHECK(s.g5 == doctest::Approx(q.g5).epsilon(1e-12));
    }
  }
}

TEST_CASE("g-integral bounds") {
  for (int p : {0, 1, 7, 80}) {
    for (double x = 0.05; x < 6; x += 0.37) {
      const auto g = g_limit_integrals(p, x);
      CHECK(std::abs(g.g3) <= 1.0 / (2 * p + 1));
      CHECK(std::abs(g.g4) <= 1.0 / (2 * p + 2));
      CHECK(std::abs(g.g5) <= 1.0 / (2 * p + 3));
    }
  }
}

TEST_CASE("limit curve shape") {
  for (int p : {0, 1, 3, 10}) {
    for (double x = 0.02; x <= 6.0; x += 0.02) CHECK(pair_correlation_limit(p, x) >= 0.0);
  }
  double plateau = 0.0;
  int count = 0;
  for (double x = 4.0; x < 6.0; x += 0.01, ++count) plateau += pair_correlation_limit(0, x);
  CHECK(plateau / count == doctest::Approx(1.0 / 3.0).epsilon(0.05));

  CHECK(pair_correlation_limit(0, 1e-3) / 1e-3 == doctest::Approx(pi * pi * std::sqrt(3.0) / 90).epsilon(1e-4));

  double best = 0.0, where = 0.0;
  for (double x = 0.9; x < 1.2; x += 0.001) {
    const double r = pair_correlation_limit(10, x);
    if (r > best) best = r, where = x;
  }
  CHECK(where == doctest::Approx(1.05).epsilon(0.01));
  CHECK(std::abs(best - 10.0) < 2.0);

  CHECK(pair_correlation_limit(80, 0.5) < pair_correlation_limit(10, 0.5));
  CHECK(arcsin_clamp_count() < 1000000);
}

TEST_CASE("limit curve refuses separations it cannot resolve") {
  CHECK_THROWS(pair_correlation_limit(0, 0.0));
  CHECK_THROWS(pair_correlation_limit(0, -1.0));
  CHECK_THROWS(pair_correlation_limit(-1, 1.0));
}

TEST_CASE("quadrature sanity") {
  const auto r = quadrature::integrate([](double t) { return std::exp(-t * t); }, 0.0, 1.0);
  CHECK(r.value == doctest::Approx(0.7468241328124271).epsilon(1e-14));
  const auto line = quadrature::integrate_real_line([](double u) { return std::pow(1 + 4 * u * u, -1.5); });
  CHECK(std::abs(line.value - 1.0) < 1e-10);
}
