#include "crystallize/analytic.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "crystallize/error.hpp"

namespace crystallize {

namespace {

using Extended = boost::multiprecision::cpp_bin_float_quad;

constexpr double kPi = std::numbers::pi;

std::atomic<std::uint64_t> g_clamps{0};

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      carry_ += (sum_ - t) + v;
    } else {
      carry_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

template <typename Scalar>
Scalar guarded_ratio(const Scalar& b, const Scalar& a, const char* where) {
  using std::abs;
  Scalar r = b / a;
  if (abs(r) > 1) {
    if (abs(r) - 1 > Scalar(1e-12)) {
      throw NumericalError(std::string(where) + ": |B/A| exceeds 1 beyond rounding");
    }
    g_clamps.fetch_add(1, std::memory_order_relaxed);
    r = r > 0 ? Scalar(1) : Scalar(-1);
  }
  return r;
}

// (B asin(B/A) + sqrt(A^2 - B^2)) / C^{3/2}
template <typename Scalar>
Scalar correlation_kernel(const Scalar& a, const Scalar& b, const Scalar& c, const char* where) {
  using std::asin;
  using std::sqrt;
  if (!(a > 0)) throw NumericalError(std::string(where) + ": conditional variance A is not positive");
  const Scalar ratio = guarded_ratio(b, a, where);
  Scalar disc = a * a - b * b;
  if (disc < 0) disc = 0;
  return (b * asin(ratio) + sqrt(disc)) / (c * sqrt(c));
}

template <typename Scalar>
struct SeriesTerms {
  Scalar g1, g2, g3, g4, g5;
  Scalar g1_minus_g3;  // computed without cancellation
};

// int_0^1 cos(w t) t^m dt = sum_k (-1)^k w^{2k} / ((2k)! (m + 2k + 1)), and the
// sine analogue. `skip_first` drops the k = 0 term (g1 - g3 directly).
template <typename Scalar>
Scalar cos_moment_series(int m, const Scalar& w, bool skip_first) {
  const Scalar w2 = w * w;
  Scalar term = 1;  // w^{2k} / (2k)!
  Scalar sum = skip_first ? Scalar(0) : Scalar(1) / Scalar(m + 1);
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  for (int k = 1; k < 400; ++k) {
    term *= -w2 / Scalar((2 * k - 1) * (2 * k));
    const Scalar add = term / Scalar(m + 2 * k + 1);
    sum += add;
    using std::abs;
    if (abs(add) <= eps * abs(sum) && k > 2) return sum;
  }
  throw NumericalError("g_limit_integrals_series: series did not converge (x too large)");
}

template <typename Scalar>
Scalar sin_moment_series(int m, const Scalar& w) {
  const Scalar w2 = w * w;
  Scalar term = w;  // w^{2k+1} / (2k+1)!
  Scalar sum = term / Scalar(m + 2);
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  for (int k = 1; k < 400; ++k) {
    term *= -w2 / Scalar((2 * k) * (2 * k + 1));
    const Scalar add = term / Scalar(m + 2 * k + 2);
    sum += add;
    using std::abs;
    if (abs(add) <= eps * abs(sum) && k > 2) return sum;
  }
  throw NumericalError("g_limit_integrals_series: series did not converge (x too large)");
}

template <typename Scalar>
SeriesTerms<Scalar> series_terms(int p, const Scalar& x) {
  const Scalar w = boost::math::constants::pi<Scalar>() * x;
  SeriesTerms<Scalar> t;
  t.g1 = Scalar(1) / Scalar(2 * p + 1);
  t.g2 = Scalar(1) / Scalar(2 * p + 3);
  t.g1_minus_g3 = -cos_moment_series<Scalar>(2 * p, w, true);
  t.g3 = t.g1 - t.g1_minus_g3;
  t.g4 = sin_moment_series<Scalar>(2 * p + 1, w);
  t.g5 = cos_moment_series<Scalar>(2 * p + 2, w, false);
  return t;
}

double pair_correlation_limit_series(int p, double x) {
  const auto t = series_terms<Extended>(p, Extended(x));
  const Extended c = t.g1_minus_g3 * (t.g1 + t.g3);
  if (!(c > 0)) throw NumericalError("pair_correlation_limit: below resolvable separation (C_p <= 0)");
  const Extended a = t.g2 * c - t.g1 * t.g4 * t.g4;
  const Extended b = t.g5 * c - t.g3 * t.g4 * t.g4;
  return static_cast<double>(correlation_kernel(a, b, c, "pair_correlation_limit"));
}

}  // namespace

double limiting_real_fraction(int p) {
  if (p < 0) throw std::invalid_argument("limiting_real_fraction: p must be >= 0");
  return std::sqrt((2.0 * p + 1.0) / (2.0 * p + 3.0));
}

double expected_real_fraction_finite_n(int N, int p) {
  if (N < 1) throw std::invalid_argument("expected_real_fraction_finite_n: N must be >= 1");
  if (p < 0) throw std::invalid_argument("expected_real_fraction_finite_n: p must be >= 0");
  // sums factored by N^{2p} (resp. N^{2p+2}) so nothing overflows
  CompensatedSum lower, upper;
  for (int n = 0; n <= N; ++n) {
    const double r = static_cast<double>(n) / N;
    const double w = std::pow(r, 2 * p);  // pow(0, 0) == 1
    lower.add(w);
    upper.add(w * r * r);
  }
  return std::sqrt(upper.value() / lower.value());
}

KacRiceInputs kac_rice_inputs(const VarianceProfile& profile) {
  CompensatedSum a2, b2;
  for (int n = 0; n <= profile.degree(); ++n) {
    const double s2 = profile.sigma(n) * profile.sigma(n);
    a2.add(s2);
    b2.add(static_cast<double>(n) * n * s2);
  }
  KacRiceInputs k;
  k.a2 = a2.value();
  k.b2 = b2.value();
  k.c = 0.0;
  k.delta2 = k.a2 * k.b2 - k.c * k.c;
  return k;
}

double kac_rice_density(const VarianceProfile& profile) {
  const auto k = kac_rice_inputs(profile);
  return std::sqrt(k.delta2) / k.a2 / kPi;
}

double expected_real_fraction(const VarianceProfile& profile) {
  return kac_rice_density(profile) * 2.0 * kPi / (2.0 * profile.degree());
}

BblTerms bbl_terms(const VarianceProfile& profile, double tau) {
  const double top = profile.sigmas().maxCoeff();
  CompensatedSum g1, g2, g3, g4, g5;
  for (int n = 1; n <= profile.degree(); ++n) {
    const double s = profile.sigma(n) / top;
    const double s2 = s * s;
    const double nd = n;
    const double c = std::cos(nd * tau);
    g1.add(s2);
    g2.add(nd * nd * s2);
    g3.add(s2 * c);
    g4.add(nd * s2 * std::sin(nd * tau));
    g5.add(nd * nd * s2 * c);
  }
  BblTerms t;
  t.g1 = g1.value();
  t.g2 = g2.value();
  t.g3 = g3.value();
  t.g4 = g4.value();
  t.g5 = g5.value();
  t.c = t.g1 * t.g1 - t.g3 * t.g3;
  t.a = t.g2 * t.c - t.g1 * t.g4 * t.g4;
  t.b = t.g5 * t.c - t.g3 * t.g4 * t.g4;
  return t;
}

double pair_correlation_finite_n(const VarianceProfile& profile, double tau) {
  const auto t = bbl_terms(profile, tau);
  if (t.c <= 1e-12 * t.g1 * t.g1) {
    throw NumericalError("pair_correlation_finite_n: degenerate separation (C ~ 0); use the small-separation expansion");
  }
  return correlation_kernel(t.a, t.b, t.c, "pair_correlation_finite_n") / (kPi * kPi);
}

double pair_correlation_finite_n_rescaled(const VarianceProfile& profile, double x) {
  const double N = profile.degree();
  return (kPi / N) * (kPi / N) * pair_correlation_finite_n(profile, kPi * x / N);
}

LimitIntegrals g_limit_integrals(int p, double x, const quadrature::Tolerance& tol) {
  if (p < 0) throw std::invalid_argument("g_limit_integrals: p must be >= 0");
  if (x < 0.0 || !std::isfinite(x)) throw std::invalid_argument("g_limit_integrals: x must be finite and >= 0");
  const double w = kPi * x;
  const int m = 2 * p;

  LimitIntegrals out;
  if (p <= 50) {
    std::vector<double> breaks;
    const int pieces = std::max(1, static_cast<int>(std::ceil(x)));
    for (int i = 0; i <= pieces; ++i) breaks.push_back(static_cast<double>(i) / pieces);
    out.g3 = quadrature::integrate([&](double t) { return std::cos(w * t) * std::pow(t, m); }, breaks, tol).value;
    out.g4 = quadrature::integrate([&](double t) { return std::sin(w * t) * std::pow(t, m + 1); }, breaks, tol).value;
    out.g5 = quadrature::integrate([&](double t) { return std::cos(w * t) * std::pow(t, m + 2); }, breaks, tol).value;
    return out;
  }
  // t = 1 - s/(2p): the weight t^{2p} ~ e^{-s} lives in s = O(1)
  const double scale = 1.0 / (2.0 * p);
  std::vector<double> breaks{0.0};
  for (double s = 1.0; s < 2.0 * p; s *= 2.0) breaks.push_back(s);
  // oscillation in s has period 4p / x
  const double period = 4.0 * p / std::max(x, 1e-300);
  for (double s = period; s < 2.0 * p; s += period) breaks.push_back(s);
  breaks.push_back(2.0 * p);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(),
                           [](double l, double r) { return r - l < 1e-12 * (1.0 + r); }),
               breaks.end());
  auto t_of = [&](double s) { return 1.0 - s * scale; };
  out.g3 = scale * quadrature::integrate([&](double s) { const double t = t_of(s); return std::cos(w * t) * std::pow(t, m); }, breaks, tol).value;
  out.g4 = scale * quadrature::integrate([&](double s) { const double t = t_of(s); return std::sin(w * t) * std::pow(t, m + 1); }, breaks, tol).value;
  out.g5 = scale * quadrature::integrate([&](double s) { const double t = t_of(s); return std::cos(w * t) * std::pow(t, m + 2); }, breaks, tol).value;
  return out;
}

LimitIntegrals g_limit_integrals_recurrence(int p, double x) {
  if (p < 0) throw std::invalid_argument("g_limit_integrals_recurrence: p must be >= 0");
  if (!(x > 0.0)) throw std::invalid_argument("g_limit_integrals_recurrence: x must be > 0");
  // The upward recurrence loses about log10(k!/(pi x)^k) digits, so run it in
  // 113-bit arithmetic; that keeps double accuracy for the k <= 12 it serves.
  const Extended w = boost::math::constants::pi<Extended>() * Extended(x);
  const Extended s = sin(w), c = cos(w);
  Extended I = s / w;          // I_0
  Extended J = (1 - c) / w;    // J_0
  LimitIntegrals out;
  if (p == 0) out.g3 = static_cast<double>(I);
  const int kmax = 2 * p + 2;
  for (int k = 1; k <= kmax; ++k) {
    const Extended next_I = s / w - (k / w) * J;
    const Extended next_J = -c / w + (k / w) * I;
    I = next_I;
    J = next_J;
    if (k == 2 * p) out.g3 = static_cast<double>(I);
    if (k == 2 * p + 1) out.g4 = static_cast<double>(J);
    if (k == 2 * p + 2) out.g5 = static_cast<double>(I);
  }
  return out;
}

LimitIntegrals g_limit_integrals_series(int p, double x) {
  if (p < 0) throw std::invalid_argument("g_limit_integrals_series: p must be >= 0");
  const auto t = series_terms<Extended>(p, Extended(x));
  return {static_cast<double>(t.g3), static_cast<double>(t.g4), static_cast<double>(t.g5)};
}

LimitTerms limit_terms(int p, double x) {
  quadrature::Tolerance tol;
  tol.rel = 1e-13;
  tol.abs = 1e-17 / (2.0 * p + 1.0);
  const auto g = g_limit_integrals(p, x, tol);
  LimitTerms t;
  t.g1 = 1.0 / (2.0 * p + 1.0);
  t.g2 = 1.0 / (2.0 * p + 3.0);
  t.g3 = g.g3;
  t.g4 = g.g4;
  t.g5 = g.g5;
  t.c = (t.g1 - t.g3) * (t.g1 + t.g3);
  t.a = t.g2 * t.c - t.g1 * t.g4 * t.g4;
  t.b = t.g5 * t.c - t.g3 * t.g4 * t.g4;
  return t;
}

double pair_correlation_limit(int p, double x) {
  if (p < 0) throw std::invalid_argument("pair_correlation_limit: p must be >= 0");
  if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument("pair_correlation_limit: x must be finite and > 0");
  if (x < kSeriesCrossover) return pair_correlation_limit_series(p, x);
  const auto t = limit_terms(p, x);
  if (!(t.c > 0.0)) throw NumericalError("pair_correlation_limit: below resolvable separation (C_p <= 0)");
  return correlation_kernel(t.a, t.b, t.c, "pair_correlation_limit");
}

std::uint64_t arcsin_clamp_count() { return g_clamps.load(std::memory_order_relaxed); }

}  // namespace crystallize
