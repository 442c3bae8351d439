#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace crystallize {

/// Real trigonometric polynomial
///   F(x) = sum_{n=0}^{N} a_n cos(n x) + b_n sin(n x)
/// with b_0 pinned to zero. Immutable after construction.
template <typename Scalar>
class BasicTrigPolynomial {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  BasicTrigPolynomial(Vector cos_coeffs, Vector sin_coeffs)
      : a_(std::move(cos_coeffs)), b_(std::move(sin_coeffs)) {
    if (a_.size() == 0 || a_.size() != b_.size()) {
      throw std::invalid_argument("TrigPolynomial: coefficient vectors must be non-empty and of equal length");
    }
    if (!a_.allFinite() || !b_.allFinite()) {
      throw std::invalid_argument("TrigPolynomial: coefficients must be finite");
    }
    b_(0) = Scalar(0);
  }

  static BasicTrigPolynomial zero(int degree) {
    check_degree(degree);
    return {Vector::Zero(degree + 1), Vector::Zero(degree + 1)};
  }

  /// a cos(n x) + b sin(n x), embedded in degree `degree`.
  static BasicTrigPolynomial mode(int degree, int n, Scalar a, Scalar b) {
    check_degree(degree);
    if (n < 0 || n > degree) throw std::invalid_argument("TrigPolynomial::mode: n out of range");
    Vector ca = Vector::Zero(degree + 1);
    Vector cb = Vector::Zero(degree + 1);
    ca(n) = a;
    cb(n) = b;
    return {std::move(ca), std::move(cb)};
  }

  int degree() const { return static_cast<int>(a_.size()) - 1; }
  const Vector& cos_coeffs() const { return a_; }
  const Vector& sin_coeffs() const { return b_; }
  Scalar a(int n) const { return a_(n); }
  Scalar b(int n) const { return b_(n); }

  bool is_zero() const { return a_.isZero(0) && b_.isZero(0); }

  Scalar max_abs_coeff() const {
    return std::max(a_.cwiseAbs().maxCoeff(), b_.cwiseAbs().maxCoeff());
  }

  template <typename Other>
  BasicTrigPolynomial<Other> cast() const {
    return {a_.template cast<Other>(), b_.template cast<Other>()};
  }

  /// Returns c*F. Zeros are unchanged for c != 0.
  BasicTrigPolynomial scaled(Scalar c) const { return {a_ * c, b_ * c}; }

  friend bool operator==(const BasicTrigPolynomial& l, const BasicTrigPolynomial& r) {
    return l.a_.size() == r.a_.size() && l.a_ == r.a_ && l.b_ == r.b_;
  }

 private:
  static void check_degree(int degree) {
    if (degree < 0) throw std::invalid_argument("TrigPolynomial: negative degree");
  }

  Vector a_;
  Vector b_;
};

using TrigPolynomial = BasicTrigPolynomial<double>;

/// Direct summation via Horner's rule on z = e^{ix}:
/// F(x) = Re sum_n (a_n - i b_n) z^n.
template <typename Scalar>
Scalar evaluate(const BasicTrigPolynomial<Scalar>& f, Scalar x) {
  using std::cos;
  using std::sin;
  const Scalar c = cos(x);
  const Scalar s = sin(x);
  const int N = f.degree();
  Scalar re = f.a(N);
  Scalar im = -f.b(N);
  for (int n = N - 1; n >= 0; --n) {
    const Scalar nre = re * c - im * s + f.a(n);
    const Scalar nim = re * s + im * c - f.b(n);
    re = nre;
    im = nim;
  }
  return re;
}

/// Exact derivative of order `times`. One application maps
/// (a_n, b_n) -> (n b_n, -n a_n).
template <typename Scalar>
BasicTrigPolynomial<Scalar> differentiate(const BasicTrigPolynomial<Scalar>& f, int times) {
  if (times < 1) throw std::invalid_argument("differentiate: times must be >= 1");
  using Vector = typename BasicTrigPolynomial<Scalar>::Vector;
  const int N = f.degree();
  Vector a(N + 1), b(N + 1);
  for (int n = 0; n <= N; ++n) {
    using std::pow;
    const Scalar w = pow(Scalar(n), times);
    // (a, b) cycles through (a, b), (b, -a), (-a, -b), (-b, a)
    switch (times % 4) {
      case 0: a(n) = w * f.a(n); b(n) = w * f.b(n); break;
      case 1: a(n) = w * f.b(n); b(n) = -w * f.a(n); break;
      case 2: a(n) = -w * f.a(n); b(n) = -w * f.b(n); break;
      default: a(n) = -w * f.b(n); b(n) = w * f.a(n); break;
    }
  }
  return {std::move(a), std::move(b)};
}

/// Derivative of order `times` divided by N^times. Same zero set as
/// differentiate(), but representable for any (N, times) since the
/// weights (n/N)^times never exceed 1.
TrigPolynomial differentiate_normalized(const TrigPolynomial& f, int times);

/// F(pi x / N): the coordinate in which the mean spacing of all 2N zeros is 1.
double evaluate_rescaled(const TrigPolynomial& f, int N, double x_rescaled);

/// Standard deviations sigma_0..sigma_N of the coefficients; a_n and b_n
/// have variance sigma_n^2.
class VarianceProfile {
 public:
  explicit VarianceProfile(Eigen::VectorXd sigmas);

  static VarianceProfile equal(int degree, double sigma = 1.0);

  /// Profile of the p-th derivative of an equal-variance polynomial:
  /// sigma_n = (n/N)^p, i.e. n^p up to the common factor N^p which no zero
  /// statistic can see. sigma_0 = 1 when p = 0 and 0 otherwise.
  static VarianceProfile derivative(int degree, int p);

  /// Only the top mode N carries variance.
  static VarianceProfile top_mode(int degree);

  int degree() const { return static_cast<int>(sigmas_.size()) - 1; }
  const Eigen::VectorXd& sigmas() const { return sigmas_; }
  double sigma(int n) const { return sigmas_(n); }

 private:
  Eigen::VectorXd sigmas_;
};

struct EnsembleSpec {
  int degree = 1;
  int derivative_order = 0;
  VarianceProfile profile = VarianceProfile::equal(1);
  std::int64_t realizations = 1;
  std::uint64_t master_seed = 0;

  /// Throws std::invalid_argument if inconsistent.
  void validate() const;

  static EnsembleSpec equal_variance(int degree, int derivative_order, std::int64_t realizations,
                                     std::uint64_t seed);
};

/// Seed of the private substream of realization `index`.
std::uint64_t substream_seed(std::uint64_t master_seed, std::int64_t index);

/// Realization `index` of the base polynomial F. Coefficients are
/// N(0, sigma_n^2), drawn mode by mode as (a_n, b_n) Marsaglia-polar pairs
/// from a mt19937_64 stream seeded with substream_seed(). b_0 is forced to 0.
TrigPolynomial sample(const EnsembleSpec& spec, std::int64_t index);

/// The polynomial whose zeros the ensemble statistics describe:
/// differentiate_normalized(sample(spec, index), p), or the sample itself for p = 0.
TrigPolynomial sample_derivative(const EnsembleSpec& spec, std::int64_t index);

}  // namespace crystallize
