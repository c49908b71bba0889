#pragma once

#include "angleforge/core.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <optional>
#include <utility>

namespace angleforge {

enum class IsometryKind { Linear, ConjugateLinear };

inline const char* kind_name(IsometryKind k) {
  return k == IsometryKind::Linear ? "linear" : "conjugate-linear";
}

// Sampled candidate symmetry: finite list of (input line, output line) pairs.
template <typename S>
struct LineMapSample {
  std::vector<Line<S>> in;
  std::vector<Line<S>> out;

  int size() const { return static_cast<int>(in.size()); }
  int dim() const { return in.empty() ? 0 : in.front().dim(); }
};

template <typename S>
struct FittedIsometry {
  Mat<S> matrix;
  IsometryKind kind = IsometryKind::Linear;
  double residual = 0.0;  // max over the sample of angle(apply(in), out)
};

template <typename S>
Line<S> apply_wigner(const FittedIsometry<S>& f, const Line<S>& line) {
  if (f.matrix.cols() != line.dim())
    throw std::invalid_argument("apply_wigner: dimension mismatch");
  Vec<S> v = line.rep();
  if (f.kind == IsometryKind::ConjugateLinear) v = v.conjugate();
  return Line<S>(Vec<S>(f.matrix * v));
}

struct AnglePreserverViolation {
  int i = 0, j = 0;
  double angle_in = 0.0, angle_out = 0.0;
};

struct AnglePreserverReport {
  std::vector<AnglePreserverViolation> violations;
  bool ok() const { return violations.empty(); }
};

// Checks the biconditional "angle = alpha on the inputs iff on the outputs"
// over all sampled pairs; lists the pairs where exactly one side holds.
template <typename S>
AnglePreserverReport is_angle_preserver(const LineMapSample<S>& sample, double alpha,
                                        double eps = tol::kAngleEq) {
  AnglePreserverReport report;
  const int n = sample.size();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double a = line_angle(sample.in[i], sample.in[j]);
      const double b = line_angle(sample.out[i], sample.out[j]);
      const bool hit_in = std::abs(a - alpha) <= eps;
      const bool hit_out = std::abs(b - alpha) <= eps;
      if (hit_in != hit_out) report.violations.push_back({i, j, a, b});
    }
  }
  return report;
}

// Largest pairwise defect |angle(in_i,in_j) - angle(out_i,out_j)|.
template <typename S>
std::pair<double, std::pair<int, int>> angle_consistency_defect(
    const LineMapSample<S>& sample) {
  double worst = 0.0;
  std::pair<int, int> arg{-1, -1};
  const int n = sample.size();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double d = std::abs(line_angle(sample.in[i], sample.in[j]) -
                                line_angle(sample.out[i], sample.out[j]));
      if (d > worst) {
        worst = d;
        arg = {i, j};
      }
    }
  }
  return {worst, arg};
}

enum class AntilinearityVerdict { Linear, ConjugateLinear, Undecidable, Inconsistent };

// Discriminates linear from conjugate-linear through the phase invariant
// <u,v><v,w><w,u> of line triples: unitaries preserve its imaginary sign,
// antiunitaries flip it. Real-valued samples are undecidable.
template <typename S>
AntilinearityVerdict classify_antilinearity(const LineMapSample<S>& sample,
                                            double im_eps = 1e-10) {
  if constexpr (!Eigen::NumTraits<S>::IsComplex) {
    return AntilinearityVerdict::Undecidable;  // no imaginary part exists
  } else {
    const int n = sample.size();
    int preserved = 0, flipped = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
          const S tin = inner(sample.in[i].rep(), sample.in[j].rep()) *
                        inner(sample.in[j].rep(), sample.in[k].rep()) *
                        inner(sample.in[k].rep(), sample.in[i].rep());
          if (std::abs(std::imag(tin)) < im_eps) continue;
          const S tout = inner(sample.out[i].rep(), sample.out[j].rep()) *
                         inner(sample.out[j].rep(), sample.out[k].rep()) *
                         inner(sample.out[k].rep(), sample.out[i].rep());
          if (std::abs(std::imag(tout)) < im_eps) continue;
          if (std::imag(tin) * std::imag(tout) > 0)
            ++preserved;
          else
            ++flipped;
        }
      }
    }
    if (preserved == 0 && flipped == 0) return AntilinearityVerdict::Undecidable;
    if (preserved > 0 && flipped > 0) return AntilinearityVerdict::Inconsistent;
    return preserved > 0 ? AntilinearityVerdict::Linear
                         : AntilinearityVerdict::ConjugateLinear;
  }
}

namespace detail {

template <typename S>
S unit_phase(const S& z) {
  const double m = abs_of(z);
  return m > 1e-14 ? S(z / S(m)) : S(1);
}

// Nearest isometry to C in Frobenius norm: the unitary polar factor.
template <typename S>
Mat<S> polar_factor(const Mat<S>& c) {
  Eigen::JacobiSVD<Mat<S>> svd(c, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

template <typename S>
double fit_residual(const FittedIsometry<S>& f, const LineMapSample<S>& sample) {
  double worst = 0.0;
  for (int i = 0; i < sample.size(); ++i)
    worst = std::max(worst, line_angle(apply_wigner(f, sample.in[i]), sample.out[i]));
  return worst;
}

template <typename S>
FittedIsometry<S> fit_with_kind(const LineMapSample<S>& sample, IsometryKind kind) {
  const int d = sample.dim();
  const int n = sample.size();
  Mat<S> ins(d, n), outs(d, n);
  for (int i = 0; i < n; ++i) {
    Vec<S> a = sample.in[i].rep();
    if (kind == IsometryKind::ConjugateLinear) a = a.conjugate();
    ins.col(i) = a;
    outs.col(i) = sample.out[i].rep();
  }

  // spanning base of input lines via column-pivoted QR
  Eigen::ColPivHouseholderQR<Mat<S>> qr(ins);
  qr.setThreshold(tol::kRank);
  if (qr.rank() < d)
    throw std::invalid_argument("fit_isometry: sample does not span the space");
  std::vector<int> base(d);
  for (int k = 0; k < d; ++k)
    base[k] = static_cast<int>(qr.colsPermutation().indices()[k]);
  Mat<S> A(d, d), B(d, d);
  for (int k = 0; k < d; ++k) {
    A.col(k) = ins.col(base[k]);
    B.col(k) = outs.col(base[k]);
  }
  const Mat<S> A_inv = A.inverse();
  const Mat<S> B_inv = B.inverse();

  // Representative phases are free per line; an extra pair with components
  // along every base direction pins them up to one global factor.
  Vec<S> phases = Vec<S>::Constant(d, S(1));
  int extra = -1;
  double best_min = 0.0;
  for (int i = 0; i < n; ++i) {
    if (std::find(base.begin(), base.end(), i) != base.end()) continue;
    Vec<S> t = A_inv * ins.col(i);
    const double m = t.cwiseAbs().minCoeff();
    if (m > best_min) {
      best_min = m;
      extra = i;
    }
  }
  if (extra >= 0 && best_min > 1e-6) {
    Vec<S> t = A_inv * ins.col(extra);
    Vec<S> s = B_inv * outs.col(extra);
    for (int k = 0; k < d; ++k) phases[k] = unit_phase(S(s[k] / t[k]));
  }

  FittedIsometry<S> f;
  f.kind = kind;
  f.matrix = polar_factor(Mat<S>(B * phases.asDiagonal() * A_inv));

  // alternate phase alignment and full-sample polar refits
  for (int it = 0; it < 4; ++it) {
    Mat<S> aligned(d, n);
    for (int i = 0; i < n; ++i) {
      const Vec<S> pred = f.matrix * ins.col(i);
      aligned.col(i) = outs.col(i) * unit_phase(S(outs.col(i).dot(pred)));
    }
    f.matrix = polar_factor(Mat<S>(aligned * ins.adjoint()));
  }
  f.residual = fit_residual(f, sample);
  return f;
}

}  // namespace detail

// Reconstructs the bijective linear or conjugate-linear isometry behind an
// angle-consistent sampled line map. Requires the inputs to span the space.
template <typename S>
FittedIsometry<S> fit_isometry(const LineMapSample<S>& sample,
                               double consistency_eps = 1e-7) {
  if (sample.in.size() != sample.out.size())
    throw std::invalid_argument("fit_isometry: in/out length mismatch");
  if (sample.size() < sample.dim())
    throw std::invalid_argument("fit_isometry: fewer pairs than dimensions");
  for (int i = 0; i < sample.size(); ++i)
    for (int j = i + 1; j < sample.size(); ++j)
      if (sample.in[i].approx_equal(sample.in[j]))
        throw std::invalid_argument("fit_isometry: duplicate input line");
  const auto [defect, pair] = angle_consistency_defect(sample);
  if (defect > consistency_eps)
    throw std::invalid_argument(
        "fit_isometry: sample is not angle-consistent, worst pair (" +
        std::to_string(pair.first) + "," + std::to_string(pair.second) +
        ") defect " + std::to_string(defect));

  const auto verdict = classify_antilinearity(sample);
  if (verdict == AntilinearityVerdict::Linear)
    return detail::fit_with_kind(sample, IsometryKind::Linear);
  if (verdict == AntilinearityVerdict::ConjugateLinear)
    return detail::fit_with_kind(sample, IsometryKind::ConjugateLinear);
  // undecidable phase data: both kinds can represent the sample, prefer the
  // better residual with a linear tie-break
  auto lin = detail::fit_with_kind(sample, IsometryKind::Linear);
  if constexpr (!Eigen::NumTraits<S>::IsComplex) return lin;
  auto conj = detail::fit_with_kind(sample, IsometryKind::ConjugateLinear);
  return conj.residual < lin.residual - 1e-12 ? conj : lin;
}

// Orthonormal basis lines of ({input lines}^perp)^perp, computed literally
// through the two orthocomplements; spans exactly the span of the inputs.
template <typename S>
std::vector<Line<S>> double_perp(const std::vector<Line<S>>& lines) {
  if (lines.empty()) throw std::invalid_argument("double_perp: empty input");
  const int d = lines.front().dim();
  std::vector<Vec<S>> span_basis;
  auto residual_of = [&span_basis](Vec<S> v) {
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& f : span_basis) v -= f * inner(v, f);
    return v;
  };
  for (const auto& l : lines) {
    Vec<S> r = residual_of(l.rep());
    if (r.norm() > tol::kRank) span_basis.push_back(r / r.norm());
  }
  auto full = orthonormal_extend<S>(span_basis, d);
  std::vector<Vec<S>> perp(full.begin() + span_basis.size(), full.end());
  auto full2 = orthonormal_extend<S>(perp, d);
  std::vector<Line<S>> out;
  for (std::size_t k = perp.size(); k < full2.size(); ++k)
    out.emplace_back(full2[k]);
  return out;
}

}  // namespace angleforge
