#pragma once

#include <algorithm>
#include <cmath>
#include <queue>
#include <span>
#include <stdexcept>
#include <vector>

#include "crystallize/error.hpp"

namespace crystallize::quadrature {

struct Result {
  double value = 0.0;
  double abs_error = 0.0;
  int intervals = 0;
};

struct Tolerance {
  double rel = 1e-10;
  double abs = 1e-14;
  int max_intervals = 4000;
};

namespace detail {

// 7-point Gauss / 15-point Kronrod nodes on [-1, 1] (QUADPACK qk15).
inline constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                   0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                   0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
                                   0.207784955007898467600689403773245, 0.0};
inline constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                   0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                   0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                   0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                  0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo, hi, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <typename F>
Panel kronrod15(F& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  double fv1[7], fv2[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    fv1[j] = f(center - dx);
    fv2[j] = f(center + dx);
    kronrod += kWgk[j] * (fv1[j] + fv2[j]);
    if (j % 2 == 1) gauss += kWg[j / 2] * (fv1[j] + fv2[j]);
  }
  // QUADPACK error heuristic
  const double mean = 0.5 * kronrod;
  double asc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) asc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));
  asc *= std::abs(half);
  double err = std::abs((kronrod - gauss) * half);
  if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  return {lo, hi, kronrod * half, err};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) over [breaks.front(), breaks.back()],
/// starting from the given panels. The panel with the largest error estimate
/// is bisected until the total error meets the tolerance.
template <typename F>
Result integrate(F f, std::span<const double> breaks, const Tolerance& tol = {}) {
  if (breaks.size() < 2) throw std::invalid_argument("quadrature: need at least two break points");
  std::priority_queue<detail::Panel> heap;
  double total = 0.0, error = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i + 1] > breaks[i])) throw std::invalid_argument("quadrature: break points must increase");
    auto p = detail::kronrod15(f, breaks[i], breaks[i + 1]);
    total += p.value;
    error += p.error;
    heap.push(p);
  }
  while (error > std::max(tol.abs, tol.rel * std::abs(total))) {
    if (static_cast<int>(heap.size()) >= tol.max_intervals) {
      throw NumericalError("quadrature: no convergence within the interval budget");
    }
    const detail::Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      throw NumericalError("quadrature: panel collapsed below machine resolution");
    }
    auto left = detail::kronrod15(f, worst.lo, mid);
    auto right = detail::kronrod15(f, mid, worst.hi);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // re-sum to shed the drift of the running updates
  Result r;
  r.intervals = static_cast<int>(heap.size());
  r.value = 0.0;
  r.abs_error = 0.0;
  while (!heap.empty()) {
    r.value += heap.top().value;
    r.abs_error += heap.top().error;
    heap.pop();
  }
  return r;
}

template <typename F>
Result integrate(F f, double lo, double hi, const Tolerance& tol = {}) {
  const double breaks[2] = {lo, hi};
  return integrate(std::move(f), std::span<const double>(breaks), tol);
}

/// Integral over the whole real line through u = t / (1 - t^2), t in (-1, 1).
template <typename F>
Result integrate_real_line(F f, const Tolerance& tol = {}) {
  auto g = [&f](double t) {
    const double d = 1.0 - t * t;
    return f(t / d) * (1.0 + t * t) / (d * d);
  };
  const double breaks[3] = {-1.0, 0.0, 1.0};
  return integrate(g, std::span<const double>(breaks), tol);
}

}  // namespace crystallize::quadrature
