#pragma once

#include <cstdint>
#include <vector>

#include "crystallize/poly.hpp"
#include "crystallize/quadrature.hpp"

namespace crystallize {

// ---------------------------------------------------------------------------
// Expected number of real zeros (Kac-Rice)
// ---------------------------------------------------------------------------

/// Large-N fraction of real zeros of the p-th derivative of an
/// equal-variance polynomial: sqrt((2p+1)/(2p+3)).
double limiting_real_fraction(int p);

/// Exact expected fraction for finite N:
/// (1/N) sqrt(sum_{n<=N} n^{2p+2} / sum_{n<=N} n^{2p}), with 0^0 = 1 so the
/// constant term enters the denominator when p = 0.
double expected_real_fraction_finite_n(int N, int p);

/// Variances of (F, F') at a point. C vanishes for the stationary ensembles
/// built from a VarianceProfile.
struct KacRiceInputs {
  double a2 = 0.0;
  double b2 = 0.0;
  double c = 0.0;
  double delta2 = 0.0;
};

KacRiceInputs kac_rice_inputs(const VarianceProfile& profile);

/// Expected real zeros per unit x: sqrt(B^2 / A^2) / pi.
double kac_rice_density(const VarianceProfile& profile);

/// kac_rice_density * 2 pi / (2N): expected share of the 2N zeros that are real.
double expected_real_fraction(const VarianceProfile& profile);

// ---------------------------------------------------------------------------
// Pair correlation at finite N
// ---------------------------------------------------------------------------

struct BblTerms {
  double g1 = 0.0, g2 = 0.0, g3 = 0.0, g4 = 0.0, g5 = 0.0;
  double a = 0.0, b = 0.0, c = 0.0;
};

/// Moment sums over n = 1..N (the constant mode is excluded) and the derived
/// A = g2 C - g1 g4^2, B = g5 C - g3 g4^2, C = g1^2 - g3^2. Sums are
/// compensated; sigmas are rescaled by their maximum first.
BblTerms bbl_terms(const VarianceProfile& profile, double tau);

/// Expected pair correlation of the real zeros at separation tau (radians):
/// (B asin(B/A) + sqrt(A^2 - B^2)) / (pi^2 C^{3/2}).
/// Throws NumericalError("degenerate separation") where C vanishes numerically.
double pair_correlation_finite_n(const VarianceProfile& profile, double tau);

/// The same curve in the rescaled coordinate x = N tau / pi, i.e.
/// (pi/N)^2 R_2(pi x / N), directly comparable to pair_correlation_limit.
double pair_correlation_finite_n_rescaled(const VarianceProfile& profile, double x);

// ---------------------------------------------------------------------------
// Large-N limit
// ---------------------------------------------------------------------------

/// g3 = int_0^1 cos(pi x t) t^{2p} dt, g4 = int_0^1 sin(pi x t) t^{2p+1} dt,
/// g5 = int_0^1 cos(pi x t) t^{2p+2} dt.
struct LimitIntegrals {
  double g3 = 0.0, g4 = 0.0, g5 = 0.0;
};

/// Adaptive Gauss-Kronrod. Panels follow the oscillation count ceil(x) and,
/// for p > 50, the t^{2p} boundary layer via t = 1 - s/(2p).
LimitIntegrals g_limit_integrals(int p, double x, const quadrature::Tolerance& tol = {});

/// Integration-by-parts recurrence
///   I_k = sin(pi x)/(pi x) - k/(pi x) J_{k-1},  J_k = -cos(pi x)/(pi x) + k/(pi x) I_{k-1}
/// from I_0 = sin(pi x)/(pi x), J_0 = (1 - cos(pi x))/(pi x). Unstable once
/// k >> pi x; intended as an independent check for small p.
LimitIntegrals g_limit_integrals_recurrence(int p, double x);

/// Maclaurin series in pi x; accurate for x of order one and below.
LimitIntegrals g_limit_integrals_series(int p, double x);

struct LimitTerms {
  double g1 = 0.0, g2 = 0.0, g3 = 0.0, g4 = 0.0, g5 = 0.0;
  double a = 0.0, b = 0.0, c = 0.0;
};

/// A_p, B_p, C_p assembled from quadrature-built g_{i,p}.
LimitTerms limit_terms(int p, double x);

/// Below this separation pair_correlation_limit switches from double-precision
/// quadrature to series evaluated in 113-bit arithmetic, since A_p, B_p and
/// C_p lose O(x^4) digits to cancellation.
inline constexpr double kSeriesCrossover = 0.25;

/// N -> infinity pair correlation of the real zeros of the p-th derivative
/// in the rescaled coordinate (normalized by the squared zero density):
///   (B_p asin(B_p/A_p) + sqrt(A_p^2 - B_p^2)) / C_p^{3/2}.
/// Throws NumericalError("below resolvable separation") if C_p <= 0 numerically.
double pair_correlation_limit(int p, double x);

/// Number of times an |B/A| within 1e-12 above 1 was clamped (process-wide).
std::uint64_t arcsin_clamp_count();

}  // namespace crystallize
