#include "crystallize/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "crystallize/analytic.hpp"
#include "crystallize/error.hpp"

namespace crystallize {

namespace {
constexpr double kPi = std::numbers::pi;
}

SeriesABC series_abc(int p, double x) {
  if (p < 2) throw std::invalid_argument("series_abc: p must be >= 2");
  const double P = p;
  const double px = kPi * x;
  const double s1 = std::sin(px), c1 = std::cos(px);
  const double s2 = std::sin(2 * px), c2 = std::cos(2 * px);
  const double c3 = std::cos(3 * px);
  SeriesABC r;
  r.a = (-2 * px * px - 2 * s2 * px + (4 * px * px - 1) * c2 + 1) / 64.0 / std::pow(P, 5);
  r.b = (c1 + (4 * px * px - 1) * c3 - 8 * px * s1) / 128.0 / std::pow(P, 5);
  r.c = 0.25 * s1 * s1 / (P * P)
        - 0.25 * (px * c1 + s1) * s1 / std::pow(P, 3)
        + (px * px + 8 * s2 * px + 3 * (px * px - 1) * c2 + 3) / 32.0 / std::pow(P, 4);
  return r;
}

double series_c_derivative(int p, double x) {
  if (p < 2) throw std::invalid_argument("series_c_derivative: p must be >= 2");
  const double P = p;
  const double s2 = std::sin(2 * kPi * x), c2 = std::cos(2 * kPi * x);
  return -(kPi * ((4 * P - 11) * kPi * c2 * x - kPi * x + (-4 * P * P + 6 * P + 3 * kPi * kPi * x * x - 7) * s2))
         / 16.0 / std::pow(P, 4);
}

double peak_location(int n, int p) {
  if (n < 1) throw std::invalid_argument("peak_location: n must be >= 1");
  if (p < 2) throw std::invalid_argument("peak_location: p must be >= 2");
  // h(x) = sin(2 pi x) - (pi x / p) cos(2 pi x) has the same roots as
  // tan(2 pi x) - pi x / p without the poles; h(n -+ 1/4) = -+1.
  auto h = [p](double x) { return std::sin(2 * kPi * x) - (kPi * x / p) * std::cos(2 * kPi * x); };
  auto dh = [p](double x) {
    return 2 * kPi * std::cos(2 * kPi * x) - (kPi / p) * std::cos(2 * kPi * x)
           + (2 * kPi * kPi * x / p) * std::sin(2 * kPi * x);
  };
  double lo = n - 0.25, hi = n + 0.25;
  double x = n * (1.0 + 0.5 / p);
  if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double hx = h(x);
    if (hx == 0.0) return x;
    if (hx < 0.0) lo = x; else hi = x;
    const double d = dh(x);
    double next = d != 0.0 ? x - hx / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // bisection fallback
    if (std::abs(next - x) <= 1e-15 * std::abs(x) || hi - lo <= 1e-15 * std::abs(x)) return next;
    x = next;
  }
  throw NumericalError("peak_location: no convergence");
}

PeakProfile PeakProfile::at(int n, int p) {
  if (n < 1) throw std::invalid_argument("PeakProfile: n must be >= 1");
  if (p < 1) throw std::invalid_argument("PeakProfile: p must be >= 1");
  return {n, p, n * (1.0 + 0.5 / p), static_cast<double>(p) / n};
}

double PeakProfile::operator()(double u) const { return height * nn_density(u); }

double PeakProfile::separation(double u) const { return n * (1.0 + 0.5 / p + u / p); }

double theorem_profile(int n, int p, double u) { return PeakProfile::at(n, p)(u); }

double nn_density(double u) { return std::pow(1.0 + 4.0 * u * u, -1.5); }

double nn_cdf(double u) { return 0.5 + u / std::sqrt(1.0 + 4.0 * u * u); }

double repulsion_slope(int p) {
  if (p < 0) throw std::invalid_argument("repulsion_slope: p must be >= 0");
  const double P = p;
  return kPi * kPi * std::sqrt(4 * P * P + 8 * P + 3) / (2 * (2 * P + 3) * (2 * P + 3) * (2 * P + 5));
}

double repulsion_expansion(int p, double x) {
  if (x < 0.0 || x > 0.2) throw std::domain_error("repulsion_expansion: x outside the expansion domain [0, 0.2]");
  return repulsion_slope(p) * x;
}

double new_real_fraction(int p) {
  if (p < 1) throw std::invalid_argument("new_real_fraction: p must be >= 1");
  return limiting_real_fraction(p) - limiting_real_fraction(p - 1);
}

namespace {

// q(x) = sin(pi x) / x and q'(x), with the removable point at 0 handled by series.
void sinc_and_derivative(double x, double& q, double& dq) {
  if (std::abs(x) < 1e-3) {
    const double w2 = kPi * kPi * x * x;
    q = kPi * (1.0 - w2 / 6.0 + w2 * w2 / 120.0 - w2 * w2 * w2 / 5040.0);
    dq = kPi * kPi * kPi * x * (-1.0 / 3.0 + w2 / 30.0 - w2 * w2 / 840.0);
    return;
  }
  q = std::sin(kPi * x) / x;
  dq = (kPi * x * std::cos(kPi * x) - std::sin(kPi * x)) / (x * x);
}

// s(x) = sin(pi x) / (x (x - 1)) and s'(x). s(1 - x) = s(x).
void kernel(double x, double& s, double& ds) {
  const bool mirrored = x > 0.5;
  const double y = mirrored ? 1.0 - x : x;
  double q, dq;
  sinc_and_derivative(y, q, dq);
  const double r = 1.0 / (y - 1.0);
  s = q * r;
  ds = dq * r - q * r * r;
  if (mirrored) ds = -ds;
}

}  // namespace

double triple_zero_function(double a, double x) {
  double s, ds;
  kernel(x, s, ds);
  return s * ((x - 0.5) * (x - 0.5) + a * a);
}

double triple_zero_derivative(double a, double x) {
  double s, ds;
  kernel(x, s, ds);
  return ds * ((x - 0.5) * (x - 0.5) + a * a) + s * 2.0 * (x - 0.5);
}

int derivative_zero_count(double a, int grid) {
  if (!(a > 0.0)) throw std::invalid_argument("triple_zero_demo: a must be > 0");
  if (grid < 2 || grid % 2 != 0) throw std::invalid_argument("derivative_zero_count: grid must be even and >= 2");
  // midpoints (j + 1/2)/grid never hit x = 1/2, where f' vanishes by symmetry
  int count = 0;
  int last_sign = 0;
  for (int j = 0; j < grid; ++j) {
    const double v = triple_zero_derivative(a, (j + 0.5) / grid);
    const int sign = (v > 0.0) - (v < 0.0);
    if (sign == 0) continue;
    if (last_sign != 0 && sign != last_sign) ++count;
    last_sign = sign;
  }
  return count;
}

TripleZeroDemo triple_zero_demo(double a, int samples, double x_lo, double x_hi) {
  if (!(a > 0.0)) throw std::invalid_argument("triple_zero_demo: a must be > 0");
  if (samples < 2 || !(x_hi > x_lo)) throw std::invalid_argument("triple_zero_demo: bad sampling window");
  TripleZeroDemo d;
  d.a = a;
  for (int i = 0; i < samples; ++i) {
    const double x = x_lo + (x_hi - x_lo) * i / (samples - 1);
    d.x.push_back(x);
    d.f.push_back(triple_zero_function(a, x));
    d.df.push_back(triple_zero_derivative(a, x));
  }
  d.derivative_zeros = derivative_zero_count(a);
  return d;
}

double triple_zero_transition(double lo, double hi, double tol) {
  if (derivative_zero_count(lo) != 3 || derivative_zero_count(hi) != 1) {
    throw std::invalid_argument("triple_zero_transition: [lo, hi] does not bracket the 3 -> 1 transition");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (derivative_zero_count(mid) >= 3) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

double triple_zero_critical_a() { return std::sqrt(2.0 / (kPi * kPi - 8.0)); }

}  // namespace crystallize
