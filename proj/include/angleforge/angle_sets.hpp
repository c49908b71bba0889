#pragma once

#include "angleforge/core.hpp"

#include <optional>
#include <utility>

namespace angleforge {

// Size classifier for level-set intersections. Finite(1) is expressed as One.
struct Cardinality {
  enum class Kind { Empty, One, Finite, Infinite };

  Kind kind = Kind::Empty;
  int count = 0;  // meaningful for Finite (>= 2); 0 for Empty, 1 for One

  static Cardinality empty() { return {Kind::Empty, 0}; }
  static Cardinality one() { return {Kind::One, 1}; }
  static Cardinality finite(int n) {
    if (n <= 0) return empty();
    if (n == 1) return one();
    return {Kind::Finite, n};
  }
  static Cardinality infinite() { return {Kind::Infinite, 0}; }

  bool operator==(const Cardinality& o) const {
    return kind == o.kind && (kind != Kind::Finite || count == o.count);
  }
  bool operator!=(const Cardinality& o) const { return !(*this == o); }

  bool many() const { return kind == Kind::Finite || kind == Kind::Infinite; }
  std::string str() const;
};

// card(x^(alpha) ∩ y^(beta)) on the unit sphere of a real space,
// gamma = sphere angle between x and y. Requires 0 < alpha <= beta < pi,
// 0 < gamma <= pi, dim >= 3.
Cardinality sphere_card(double alpha, double beta, double gamma, int dim,
                        double eps = tol::kAngleEq);

// card([v]^alpha ∩ [w]^beta) in P(H), gamma = line angle between [v] and [w].
// Requires 0 < alpha <= beta <= pi/2, 0 < gamma <= pi/2, dim >= 3.
Cardinality proj_card(double alpha, double beta, double gamma, int dim,
                      Field field, double eps = tol::kAngleEq);

// diam of x^(alpha) ∩ y^(alpha) as a function of gamma = angle(x,y):
// arccos(2 cos^2 alpha / cos^2(gamma/2) - 1), strictly decreasing on (0,2alpha).
double sphere_cap_diam(double alpha, double gamma);

// Unique gamma0 in (alpha,2alpha) with sphere_cap_diam(alpha,gamma0) = alpha:
// arccos(4 cos^2 alpha / (cos alpha + 1) - 1).
double gamma0(double alpha);

// diam of [v]^alpha ∩ [w]^alpha over a complex space, alpha in (0,pi/4),
// gamma in (0,2alpha): 2 arccos sqrt((cos^2 a - sin^2(g/2))/(cos^2(g/2) - sin^2(g/2))).
double proj_diam(double alpha, double gamma);

// (1 - (1/4)/sin^2(g/2))^(1/2) * (1 - (1/4)/cos^2(g/2))^(1/2): the common
// modulus of the four cross inner products among the alpha=pi/3, dim-3
// intersection lines. Domain gamma in (pi/3, pi/2].
double dim3_pi3_cross_angles(double gamma);

// Angle between [sqrt(1/2) v + lam sqrt(1/2) w] and [sqrt(1/2) v + mu sqrt(1/2) w]
// for orthogonal v,w: arccos(|1 + lam conj(mu)| / 2).
double ortho_circle_angles(const Complex& lam, const Complex& mu);

// beta1 = arccos(1 - 1/(1+cos a)), beta2 = arccos(1 - 1/(1-cos a)),
// defined for pi/3 < alpha < pi/2.
std::pair<double, double> beta_pair(double alpha);

// Reflection through the axis of x: 2<u,x>x - u, the unique second point of
// x^(2pi/3) ∩ u^(2pi/3). Requires angle(x,u) = 2pi/3 up to eps.
RealVec tilde_point(const RealVec& x, const RealVec& u, double eps = 1e-6);

// Level set x^(alpha) ∩ y^(alpha) on the sphere, gamma in (0,2alpha),
// alpha < pi/2: points (cos a / cos(g/2)) e1 + sqrt(1 - (cos a / cos(g/2))^2) e3
// with e3 running over the unit sphere of the orthocomplement of {e1,e2}.
class SphereCapIntersection {
 public:
  SphereCapIntersection(const RealVec& x, const RealVec& y, double alpha);

  double alpha() const { return alpha_; }
  double gamma() const { return gamma_; }
  double axis_coeff() const { return c1_; }
  double orth_coeff() const { return c3_; }

  // Deterministic sample of the set; dim 3 yields the two points +-e3.
  std::vector<RealVec> materialize(int resolution) const;

  // max over samples of |angle(s,x) - alpha| and |angle(s,y) - alpha|
  double membership_residual(const std::vector<RealVec>& samples) const;

 private:
  RealVec x_, y_, e1_, e2_;
  std::vector<RealVec> comp_;  // orthonormal basis of {e1,e2}^perp
  double alpha_, gamma_, c1_, c3_;
};

SphereCapIntersection sphere_cap_pair_set(const RealVec& x, const RealVec& y,
                                          double alpha);

// Level set [v]^alpha ∩ [w]^alpha over a complex space: either the
// (epsilon,lambda,e3) parametrized surface (alpha < pi/4, gamma in (0,2alpha)),
// or, for orthogonal v,w at alpha = pi/4, the circle
// {[sqrt(1/2) v + lam sqrt(1/2) w] : |lam| = 1}.
class ProjCapIntersection {
 public:
  ProjCapIntersection(const ComplexLine& v, const ComplexLine& w, double alpha);

  double alpha() const { return alpha_; }
  double gamma() const { return gamma_; }
  bool is_ortho_circle() const { return ortho_circle_; }

  std::vector<ComplexLine> materialize(int resolution) const;
  double membership_residual(const std::vector<ComplexLine>& samples) const;

  // coefficient functions of the parametrization at parameter eps
  double coeff_e1(double eps) const;
  double coeff_rest(double eps) const;

 private:
  ComplexLine v_, w_;
  ComplexVec e1_, e2_;
  std::vector<ComplexVec> comp_;
  double alpha_, gamma_;
  bool ortho_circle_ = false;
};

ProjCapIntersection proj_cap_pair_set(const ComplexLine& v, const ComplexLine& w,
                                      double alpha);

// The two lines of [v]^alpha ∩ [w]^alpha at mutual angle proj_diam(alpha,gamma):
// A e1 + i B e2 and A e1 - i B e2 in the frame determined by v,w.
std::pair<ComplexLine, ComplexLine> proj_extremal_pair(const ComplexLine& v,
                                                       const ComplexLine& w,
                                                       double alpha);

// [x]^alpha ∩ [y]^alpha in a 3-dimensional real space, pi/3 < alpha < pi/2.
// Up to four lines; coincident ones merged at 1e-8. Exactly three iff
// gamma = pi - 2 alpha.
std::vector<RealLine> dim3_real_intersection(const RealLine& x, const RealLine& y,
                                             double alpha);

// Orthonormal pair (e1,e2) with v = cos(g/2) e1 + sin(g/2) e2 and
// w ~ cos(g/2) e1 - sin(g/2) e2 for re-phased unit representatives.
template <typename S>
std::pair<Vec<S>, Vec<S>> bisector_frame(const Line<S>& v, const Line<S>& w) {
  const Vec<S>& a = v.rep();
  Vec<S> b = w.rep();
  const S ip = inner(b, a);  // <b,a>, want <a, b'> real >= 0
  const double m = abs_of(ip);
  if (m > 1e-15) b *= ip / S(m);
  Vec<S> s = a + b;
  Vec<S> d = a - b;
  const double ns = s.norm(), nd = d.norm();
  if (ns < 1e-12 || nd < 1e-12)
    throw std::invalid_argument("bisector_frame: lines coincide");
  return {Vec<S>(s / ns), Vec<S>(d / nd)};
}

}  // namespace angleforge
