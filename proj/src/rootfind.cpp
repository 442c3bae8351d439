#include "crystallize/rootfind.hpp"

#include <algorithm>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "crystallize/error.hpp"

namespace crystallize {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

// Bracket [lo, hi] with f(lo), f(hi) of opposite sign.
double refine_bracket(const TrigPolynomial& f, double lo, double hi, double flo, double fhi,
                      const SampledRootOptions& options) {
  int retained = 0;  // -1: lo was kept twice in a row, +1: hi
  bool force_bisect = false;
  double width = hi - lo;
  for (int it = 0; it < options.max_iterations; ++it) {
    if (hi - lo < options.tolerance) return 0.5 * (lo + hi);
    double x = 0.5 * (lo + hi);
    if (!force_bisect) {
      const double secant = (lo * fhi - hi * flo) / (fhi - flo);
      if (secant > lo && secant < hi) x = secant;
    }
    const double fx = evaluate(f, x);
    if (fx == 0.0) return x;
    if ((fx < 0.0) == (flo < 0.0)) {
      lo = x;
      flo = fx;
      if (retained == +1) fhi *= 0.5;
      retained = +1;
    } else {
      hi = x;
      fhi = fx;
      if (retained == -1) flo *= 0.5;
      retained = -1;
    }
    const double new_width = hi - lo;
    force_bisect = new_width > 0.5 * width;
    width = new_width;
  }
  std::ostringstream msg;
  msg.precision(17);
  msg << "real_roots_sampled: no convergence in bracket [" << lo << ", " << hi << "] after "
      << options.max_iterations << " iterations";
  throw NumericalError(msg.str());
}

std::complex<double> horner(const Eigen::VectorXcd& c, std::complex<double> z,
                            std::complex<double>* derivative) {
  std::complex<double> p = c(c.size() - 1);
  std::complex<double> dp = 0.0;
  for (Eigen::Index k = c.size() - 2; k >= 0; --k) {
    dp = dp * z + p;
    p = p * z + c(k);
  }
  if (derivative) *derivative = dp;
  return p;
}

}  // namespace

std::string_view to_string(RootMethod method) {
  return method == RootMethod::sampled ? "sampled" : "companion";
}

RootSet real_roots_sampled(const TrigPolynomial& f, const SampledRootOptions& options) {
  if (options.oversample < 4) throw std::invalid_argument("real_roots_sampled: oversample must be >= 4");
  if (f.is_zero()) throw std::invalid_argument("real_roots_sampled: degenerate input (identically zero)");

  const int N = f.degree();
  const long K = static_cast<long>(options.oversample) * (2L * N + 1);
  const double h = kTwoPi / static_cast<double>(K);
  std::vector<double> values(K + 1);
  for (long j = 0; j < K; ++j) values[j] = evaluate(f, h * static_cast<double>(j));
  values[K] = values[0];

  RootSet out;
  out.method = RootMethod::sampled;
  out.tolerance = options.tolerance;
  for (long j = 0; j < K; ++j) {
    const double x0 = h * static_cast<double>(j);
    if (values[j] == 0.0) {
      out.real_roots.push_back(x0);
      continue;
    }
    if (values[j + 1] != 0.0 && (values[j] < 0.0) != (values[j + 1] < 0.0)) {
      const double x1 = j + 1 == K ? kTwoPi : h * static_cast<double>(j + 1);
      out.real_roots.push_back(wrap_angle(refine_bracket(f, x0, x1, values[j], values[j + 1], options)));
    }
  }
  std::sort(out.real_roots.begin(), out.real_roots.end());
  out.real_roots.erase(std::unique(out.real_roots.begin(), out.real_roots.end()), out.real_roots.end());
  return out;
}

Eigen::VectorXcd companion_polynomial(const TrigPolynomial& f) {
  const int N = f.degree();
  Eigen::VectorXcd c(2 * N + 1);
  c(N) = f.a(0);
  for (int n = 1; n <= N; ++n) {
    c(N + n) = std::complex<double>(f.a(n), -f.b(n)) * 0.5;
    c(N - n) = std::complex<double>(f.a(n), f.b(n)) * 0.5;
  }
  return c;
}

RootSet all_roots_companion(const TrigPolynomial& f, const CompanionRootOptions& options) {
  const int N = f.degree();
  if (N < 1 || (f.a(N) == 0.0 && f.b(N) == 0.0)) {
    throw std::invalid_argument("all_roots_companion: degree deficient (a_N = b_N = 0)");
  }
  const Eigen::VectorXcd c = companion_polynomial(f);
  const int m = 2 * N;
  const std::complex<double> lead = c(m);

  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(m, m);
  companion.diagonal(-1).setOnes();
  companion.col(m - 1) = -c.head(m) / lead;

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("all_roots_companion: eigenvalue iteration did not converge");
  }

  RootSet out;
  out.method = RootMethod::companion;
  out.tolerance = options.classify_tol;
  std::vector<std::complex<double>> complex_roots;
  for (Eigen::Index k = 0; k < m; ++k) {
    std::complex<double> z = solver.eigenvalues()(k);
    for (int it = 0; it < options.polish_iterations; ++it) {
      std::complex<double> dq;
      const std::complex<double> q = horner(c, z, &dq);
      if (dq == 0.0) break;
      const std::complex<double> next = z - q / dq;
      if (std::abs(horner(c, next, nullptr)) >= std::abs(q)) break;
      z = next;
    }
    const double modulus = std::abs(z);
    const double angle = wrap_angle(std::arg(z));
    if (std::abs(modulus - 1.0) < options.classify_tol) {
      out.real_roots.push_back(angle);
    } else {
      complex_roots.emplace_back(angle, -std::log(modulus));
    }
  }
  std::sort(out.real_roots.begin(), out.real_roots.end());
  std::sort(complex_roots.begin(), complex_roots.end(), [](auto l, auto r) {
    return l.real() != r.real() ? l.real() < r.real() : l.imag() < r.imag();
  });
  out.complex_roots = std::move(complex_roots);
  return out;
}

double fraction_real(const RootSet& roots, int N) {
  if (N < 1) throw std::invalid_argument("fraction_real: N must be >= 1");
  return static_cast<double>(roots.real_roots.size()) / (2.0 * N);
}

}  // namespace crystallize
