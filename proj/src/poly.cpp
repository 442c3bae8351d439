#include "crystallize/poly.hpp"

#include <numbers>
#include <random>

namespace crystallize {

TrigPolynomial differentiate_normalized(const TrigPolynomial& f, int times) {
  if (times < 1) throw std::invalid_argument("differentiate_normalized: times must be >= 1");
  const int N = f.degree();
  if (N == 0) return TrigPolynomial::zero(0);
  Eigen::VectorXd a(N + 1), b(N + 1);
  for (int n = 0; n <= N; ++n) {
    const double w = std::pow(static_cast<double>(n) / N, times);
    switch (times % 4) {
      case 0: a(n) = w * f.a(n); b(n) = w * f.b(n); break;
      case 1: a(n) = w * f.b(n); b(n) = -w * f.a(n); break;
      case 2: a(n) = -w * f.a(n); b(n) = -w * f.b(n); break;
      default: a(n) = -w * f.b(n); b(n) = w * f.a(n); break;
    }
  }
  return {std::move(a), std::move(b)};
}

double evaluate_rescaled(const TrigPolynomial& f, int N, double x_rescaled) {
  if (N != f.degree()) throw std::invalid_argument("evaluate_rescaled: N must equal the degree");
  if (N == 0) return evaluate(f, 0.0);
  return evaluate(f, std::numbers::pi * x_rescaled / N);
}

VarianceProfile::VarianceProfile(Eigen::VectorXd sigmas) : sigmas_(std::move(sigmas)) {
  if (sigmas_.size() < 2) throw std::invalid_argument("VarianceProfile: degree must be >= 1");
  if (!sigmas_.allFinite() || (sigmas_.array() < 0.0).any()) {
    throw std::invalid_argument("VarianceProfile: sigmas must be finite and >= 0");
  }
  if (!(sigmas_.tail(sigmas_.size() - 1).array() > 0.0).any()) {
    throw std::invalid_argument("VarianceProfile: some sigma_n with n >= 1 must be positive");
  }
}

VarianceProfile VarianceProfile::equal(int degree, double sigma) {
  if (degree < 1) throw std::invalid_argument("VarianceProfile: degree must be >= 1");
  return VarianceProfile(Eigen::VectorXd::Constant(degree + 1, sigma));
}

VarianceProfile VarianceProfile::derivative(int degree, int p) {
  if (degree < 1) throw std::invalid_argument("VarianceProfile: degree must be >= 1");
  if (p < 0) throw std::invalid_argument("VarianceProfile: derivative order must be >= 0");
  Eigen::VectorXd s(degree + 1);
  for (int n = 0; n <= degree; ++n) s(n) = std::pow(static_cast<double>(n) / degree, p);
  return VarianceProfile(std::move(s));
}

VarianceProfile VarianceProfile::top_mode(int degree) {
  if (degree < 1) throw std::invalid_argument("VarianceProfile: degree must be >= 1");
  Eigen::VectorXd s = Eigen::VectorXd::Zero(degree + 1);
  s(degree) = 1.0;
  return VarianceProfile(std::move(s));
}

void EnsembleSpec::validate() const {
  if (degree < 1) throw std::invalid_argument("EnsembleSpec: degree must be >= 1");
  if (derivative_order < 0) throw std::invalid_argument("EnsembleSpec: derivative order must be >= 0");
  if (realizations < 1) throw std::invalid_argument("EnsembleSpec: realizations must be >= 1");
  if (profile.degree() != degree) throw std::invalid_argument("EnsembleSpec: profile degree mismatch");
}

EnsembleSpec EnsembleSpec::equal_variance(int degree, int derivative_order, std::int64_t realizations,
                                          std::uint64_t seed) {
  EnsembleSpec spec{degree, derivative_order, VarianceProfile::equal(degree), realizations, seed};
  spec.validate();
  return spec;
}

namespace {

// splitmix64 finalizer
std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Uniform in (-1, 1) from the top 53 bits.
double symmetric_uniform(std::mt19937_64& rng) {
  return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
}

// Marsaglia polar method; yields two independent standard normals.
std::pair<double, double> normal_pair(std::mt19937_64& rng) {
  for (;;) {
    const double u = symmetric_uniform(rng);
    const double v = symmetric_uniform(rng);
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) {
      const double k = std::sqrt(-2.0 * std::log(s) / s);
      return {u * k, v * k};
    }
  }
}

}  // namespace

std::uint64_t substream_seed(std::uint64_t master_seed, std::int64_t index) {
  return mix64(master_seed ^ mix64(static_cast<std::uint64_t>(index) + 0x9e3779b97f4a7c15ULL));
}

TrigPolynomial sample(const EnsembleSpec& spec, std::int64_t index) {
  spec.validate();
  if (index < 0 || index >= spec.realizations) {
    throw std::out_of_range("sample: realization index out of range");
  }
  std::mt19937_64 rng(substream_seed(spec.master_seed, index));
  const int N = spec.degree;
  Eigen::VectorXd a(N + 1), b(N + 1);
  for (int n = 0; n <= N; ++n) {
    const auto [za, zb] = normal_pair(rng);
    const double sigma = spec.profile.sigma(n);
    a(n) = sigma > 0.0 ? sigma * za : 0.0;
    b(n) = sigma > 0.0 ? sigma * zb : 0.0;
  }
  return {std::move(a), std::move(b)};
}

TrigPolynomial sample_derivative(const EnsembleSpec& spec, std::int64_t index) {
  TrigPolynomial f = sample(spec, index);
  if (spec.derivative_order == 0) return f;
  return differentiate_normalized(f, spec.derivative_order);
}

}  // namespace crystallize
