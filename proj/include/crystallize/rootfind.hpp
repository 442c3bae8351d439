#pragma once

#include <complex>
#include <optional>
#include <string_view>
#include <vector>

#include "crystallize/poly.hpp"

namespace crystallize {

enum class RootMethod { sampled, companion };

std::string_view to_string(RootMethod method);

/// Zeros of a trigonometric polynomial over one period.
struct RootSet {
  /// Strictly increasing, each in [0, 2*pi).
  std::vector<double> real_roots;
  /// Non-real zeros x = -i log z with Im(x) != 0. Present for the companion
  /// method only; together with real_roots they number 2N with multiplicity.
  std::optional<std::vector<std::complex<double>>> complex_roots;
  RootMethod method = RootMethod::sampled;
  double tolerance = 0.0;
};

struct SampledRootOptions {
  int oversample = 16;
  double tolerance = 1e-12;
  int max_iterations = 200;
};

/// Grid scan with oversample*(2N+1) points, then bracket refinement by
/// bisection with Illinois-secant steps. Only sign-changing zeros are found.
RootSet real_roots_sampled(const TrigPolynomial& f, const SampledRootOptions& options = {});

struct CompanionRootOptions {
  double classify_tol = 1e-8;
  int polish_iterations = 3;
};

/// All 2N zeros via the eigenvalues of the companion matrix of
/// Q(z) = e^{iNx} F(x), z = e^{ix}. Roots with ||z| - 1| < classify_tol are real.
RootSet all_roots_companion(const TrigPolynomial& f, const CompanionRootOptions& options = {});

/// Coefficients c_0..c_{2N} of Q with F(x) = e^{-iNx} Q(e^{ix}).
Eigen::VectorXcd companion_polynomial(const TrigPolynomial& f);

/// |real_roots| / (2N).
double fraction_real(const RootSet& roots, int N);

}  // namespace crystallize
