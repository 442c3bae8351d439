#pragma once

#include <vector>

namespace crystallize {

/// Leading large-p terms of A_p, B_p (order p^-5) and C_p (orders p^-2..p^-4).
struct SeriesABC {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

SeriesABC series_abc(int p, double x);

/// d/dx of the truncated C_p expansion, order p^-4.
double series_c_derivative(int p, double x);

/// Root of tan(2 pi x) = pi x / p nearest the positive integer n (a minimum of
/// C_p, hence a peak of the pair correlation). Guarded Newton from
/// n (1 + 1/(2p)) inside (n - 1/4, n + 1/4).
double peak_location(int n, int p);

/// The pair-correlation peak near integer n as p grows:
/// R_{2,p}(n (1 + 1/(2p) + u/p)) ~ (p/n) (1 + 4u^2)^{-3/2}.
struct PeakProfile {
  int n = 1;
  int p = 1;
  double center = 0.0;  // n (1 + 1/(2p))
  double height = 0.0;  // p / n

  static PeakProfile at(int n, int p);
  double operator()(double u) const;
  /// Separation x at offset u.
  double separation(double u) const;
};

double theorem_profile(int n, int p, double u);

/// (1 + 4u^2)^{-3/2}: density of u = p (s - 1 - 1/(2p)) for nearest-neighbor
/// spacings s at large p. Heavy tailed; total mass 1.
double nn_density(double u);

/// Its distribution function, 1/2 + u / sqrt(1 + 4u^2).
double nn_cdf(double u);

/// Linear coefficient of R_{2,p}(x) at x -> 0:
/// pi^2 sqrt(4p^2 + 8p + 3) / (2 (2p+3)^2 (2p+5)), ~ pi^2 / (8 p^2).
double repulsion_slope(int p);

/// Small-separation form of the limit curve, valid for 0 <= x <= 0.2:
/// repulsion_slope(p) * x. The curve has no x^2 term; the next correction is O(x^3).
double repulsion_expansion(int p, double x);

/// v_p - v_{p-1}: share of the zeros that become real at the p-th derivative.
double new_real_fraction(int p);

/// f(x) = sin(pi x) ((x - 1/2)^2 + a^2) / (x (x - 1)): unit-spaced real zeros
/// except at 0 and 1, which are replaced by the pair 1/2 +- i a.
double triple_zero_function(double a, double x);
double triple_zero_derivative(double a, double x);

/// Number of sign changes of f' on a uniform grid of `grid` points inside (0, 1).
int derivative_zero_count(double a, int grid = 20000);

struct TripleZeroDemo {
  double a = 0.0;
  std::vector<double> x;
  std::vector<double> f;
  std::vector<double> df;
  int derivative_zeros = 0;  // in (0, 1)
};

/// Samples f and f' on [x_lo, x_hi] and counts the zeros of f' in (0, 1).
TripleZeroDemo triple_zero_demo(double a, int samples = 801, double x_lo = -1.5, double x_hi = 2.5);

/// Bisection on a in [lo, hi] for the value where f' goes from three zeros
/// in (0, 1) to one.
double triple_zero_transition(double lo = 0.9, double hi = 1.2, double tol = 1e-7);

/// a at which f'(1/2) = f'''(1/2) = 0: a^2 = 2 / (pi^2 - 8).
double triple_zero_critical_a();

}  // namespace crystallize
