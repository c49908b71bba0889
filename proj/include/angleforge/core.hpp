#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace angleforge {

inline constexpr double kPi = std::numbers::pi;

enum class Field { Real, Complex };

using Complex = std::complex<double>;

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using RealVec = Vec<double>;
using ComplexVec = Vec<Complex>;

template <typename Scalar>
inline constexpr Field field_of =
    Eigen::NumTraits<Scalar>::IsComplex ? Field::Complex : Field::Real;

namespace tol {
inline constexpr double kUnitNorm = 1e-12;  // ||x|| = 1 slack
inline constexpr double kLineEq = 1e-10;    // line representative equality
inline constexpr double kAngleEq = 1e-9;    // angle comparisons / case tables
inline constexpr double kRank = 1e-10;      // rank-deficiency cutoff
inline constexpr double kDedup = 1e-11;     // derived-angle coalescing
}  // namespace tol

inline constexpr int kMaxDim = 64;

inline double clamp_unit(double t) {
  return t < -1.0 ? -1.0 : (t > 1.0 ? 1.0 : t);
}

// <x,y> = sum_k x_k conj(y_k): conjugation sits in the second slot.
template <typename S>
S inner(const Vec<S>& x, const Vec<S>& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("inner: dimension mismatch");
  return y.dot(x);
}

inline double abs_of(double x) { return std::abs(x); }
inline double abs_of(const Complex& x) { return std::abs(x); }
inline double conj_of(double x) { return x; }
inline Complex conj_of(const Complex& x) { return std::conj(x); }

// Deterministic generator (explicit state, safe to run one per thread).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

  double uniform() {  // [0,1)
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  double gaussian() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    cached_ = r * std::sin(2.0 * kPi * u2);
    has_cached_ = true;
    return r * std::cos(2.0 * kPi * u2);
  }

 private:
  std::uint64_t next() {  // xorshift* keeps the stream platform-stable
    std::uint64_t x = state_;
    x ^= x >> 12;
    x ^= x << 25;
    x ^= x >> 27;
    state_ = x;
    return x * 0x2545f4914f6cdd1dull;
  }

  std::uint64_t state_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

template <typename S>
S random_scalar(Rng& rng);

template <>
inline double random_scalar<double>(Rng& rng) {
  return rng.gaussian();
}

template <>
inline Complex random_scalar<Complex>(Rng& rng) {
  const double re = rng.gaussian();
  const double im = rng.gaussian();
  return Complex(re, im);
}

template <typename S>
Vec<S> random_unit(int dim, Rng& rng) {
  if (dim < 2) throw std::invalid_argument("random_unit: dim must be >= 2");
  if (dim > kMaxDim) throw std::invalid_argument("random_unit: dim too large");
  Vec<S> v(dim);
  for (int i = 0; i < dim; ++i) v[i] = random_scalar<S>(rng);
  double n = v.norm();
  while (n < 1e-8) {  // essentially impossible, retry anyway
    for (int i = 0; i < dim; ++i) v[i] = random_scalar<S>(rng);
    n = v.norm();
  }
  return v / n;
}

template <typename S>
Vec<S> random_unit(int dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_unit<S>(dim, rng);
}

// One-dimensional subspace [v], stored through a canonical representative:
// unit norm, first component above 1e-10 in modulus made real and positive.
template <typename S>
class Line {
 public:
  explicit Line(const Vec<S>& v) : rep_(canonicalize(v)) {}

  const Vec<S>& rep() const { return rep_; }
  int dim() const { return static_cast<int>(rep_.size()); }

  static Line along(int axis, int dim) {
    Vec<S> v = Vec<S>::Zero(dim);
    v[axis] = S(1);
    return Line(v);
  }

  bool approx_equal(const Line& other, double eps = tol::kLineEq) const {
    if (dim() != other.dim()) return false;
    return (rep_ - other.rep_).template lpNorm<Eigen::Infinity>() <= eps;
  }

 private:
  static Vec<S> canonicalize(Vec<S> v) {
    const double n = v.norm();
    if (!(n > 1e-14)) throw std::invalid_argument("Line: zero vector");
    v /= n;
    Eigen::Index pivot = -1;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (abs_of(v[i]) > 1e-10) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) throw std::invalid_argument("Line: no usable pivot component");
    const S phase = v[pivot] / S(abs_of(v[pivot]));
    v *= conj_of(phase);
    v[pivot] = S(abs_of(v[pivot]));  // kill residual imaginary dust
    return v;
  }

  Vec<S> rep_;
};

using RealLine = Line<double>;
using ComplexLine = Line<Complex>;

// Angle between unit vectors on the sphere, values in [0,pi]. Real spaces only.
inline double sphere_angle(const RealVec& x, const RealVec& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("sphere_angle: dimension mismatch");
  return std::acos(clamp_unit(inner(x, y)));
}

// Angle between lines, values in [0,pi/2]; independent of representatives.
template <typename S>
double line_angle(const Line<S>& a, const Line<S>& b) {
  return std::acos(clamp_unit(abs_of(inner(a.rep(), b.rep()))));
}

// Tr PQ for the rank-one projections onto the two lines.
template <typename S>
double transition_probability(const Line<S>& a, const Line<S>& b) {
  const double c = abs_of(inner(a.rep(), b.rep()));
  return clamp_unit(c * c);
}

// ||P-Q|| = sqrt(1 - Tr PQ) in operator norm.
template <typename S>
double gap_distance(const Line<S>& a, const Line<S>& b) {
  return std::sqrt(std::max(0.0, 1.0 - transition_probability(a, b)));
}

template <typename S>
Mat<S> projector(const Line<S>& a) {
  return a.rep() * a.rep().adjoint();
}

// Completes a pairwise orthonormal partial system to a full orthonormal frame.
// Throws on rank-deficient input (dependence below 1e-10).
template <typename S>
std::vector<Vec<S>> orthonormal_extend(const std::vector<Vec<S>>& partial, int dim) {
  if (dim < 1 || dim > kMaxDim)
    throw std::invalid_argument("orthonormal_extend: bad dimension");
  std::vector<Vec<S>> frame;
  frame.reserve(dim);
  auto project_out = [&frame](Vec<S> v) {
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& f : frame) v -= f * inner(v, f);
    return v;
  };
  for (const auto& p : partial) {
    if (p.size() != dim)
      throw std::invalid_argument("orthonormal_extend: vector of wrong dimension");
    Vec<S> v = project_out(p);
    const double n = v.norm();
    if (n < tol::kRank)
      throw std::invalid_argument("orthonormal_extend: dependent input");
    frame.push_back(v / n);
  }
  for (int axis = 0; axis < dim && static_cast<int>(frame.size()) < dim; ++axis) {
    Vec<S> v = project_out(Vec<S>(Vec<S>::Unit(dim, axis)));
    const double n = v.norm();
    if (n > 1e-6) frame.push_back(v / n);
  }
  if (static_cast<int>(frame.size()) != dim)
    throw std::runtime_error("orthonormal_extend: frame completion failed");
  return frame;
}

inline const char* field_name(Field f) {
  return f == Field::Real ? "real" : "complex";
}

}  // namespace angleforge
