#include "angleforge/angle_sets.hpp"

#include <algorithm>

namespace angleforge {

std::string Cardinality::str() const {
  switch (kind) {
    case Kind::Empty: return "empty";
    case Kind::One: return "one";
    case Kind::Finite: return "finite(" + std::to_string(count) + ")";
    case Kind::Infinite: return "infinite";
  }
  return "?";
}

namespace {

bool near(double a, double b, double eps) { return std::abs(a - b) <= eps; }

}  // namespace

Cardinality sphere_card(double alpha, double beta, double gamma, int dim, double eps) {
  if (!(0.0 < alpha && alpha <= beta && beta < kPi))
    throw std::invalid_argument("sphere_card: need 0 < alpha <= beta < pi");
  if (!(0.0 < gamma && gamma <= kPi + 1e-15))
    throw std::invalid_argument("sphere_card: need 0 < gamma <= pi");
  if (dim < 3) throw std::invalid_argument("sphere_card: need dim >= 3");
  gamma = std::min(gamma, kPi);

  // x^(pi/2) ∩ y^(pi/2) is the unit sphere of {x,y}^perp; the case table
  // below assumes alpha < pi/2 when alpha = beta.
  if (near(alpha, kPi / 2, eps) && near(beta, kPi / 2, eps)) {
    if (near(gamma, kPi, eps)) return Cardinality::infinite();
    return dim == 3 ? Cardinality::finite(2) : Cardinality::infinite();
  }

  const double sum = alpha + beta;
  const double diff = beta - alpha;
  const double upper = sum < kPi ? sum : 2.0 * kPi - sum;  // reachability bound

  if (gamma < diff - eps || gamma > upper + eps) return Cardinality::empty();
  if (near(gamma, diff, eps)) {
    if (diff <= eps) {
      // alpha = beta: the lower boundary gamma = 0 is outside the domain;
      // fall through to the interior classification.
    } else {
      return Cardinality::one();
    }
  }
  if (near(gamma, upper, eps) && !near(sum, kPi, eps)) return Cardinality::one();

  // Nonempty and not a single point. In dim 3 the two alpha/beta circles
  // meet in two points unless they coincide (gamma = pi with beta = pi - alpha).
  if (near(gamma, kPi, eps) && near(sum, kPi, eps)) return Cardinality::infinite();
  return dim == 3 ? Cardinality::finite(2) : Cardinality::infinite();
}

Cardinality proj_card(double alpha, double beta, double gamma, int dim,
                      Field field, double eps) {
  if (!(0.0 < alpha && alpha <= beta && beta <= kPi / 2 + 1e-15))
    throw std::invalid_argument("proj_card: need 0 < alpha <= beta <= pi/2");
  if (!(0.0 < gamma && gamma <= kPi / 2 + 1e-15))
    throw std::invalid_argument("proj_card: need 0 < gamma <= pi/2");
  if (dim < 3) throw std::invalid_argument("proj_card: need dim >= 3");
  beta = std::min(beta, kPi / 2);
  gamma = std::min(gamma, kPi / 2);

  if (near(alpha, kPi / 2, eps)) {
    // alpha = beta = pi/2: the double orthocomplement set
    return dim == 3 ? Cardinality::one() : Cardinality::infinite();
  }

  const double sum = alpha + beta;
  const double diff = beta - alpha;

  if (gamma < diff - eps || gamma > sum + eps) return Cardinality::empty();
  if (near(gamma, diff, eps) && diff > eps) return Cardinality::one();
  if (near(gamma, sum, eps)) {
    if (sum < kPi / 2 - eps) return Cardinality::one();
    // gamma = pi/2 = alpha + beta: the unimodular family cos(a) v + lam sin(a) w
    return field == Field::Complex ? Cardinality::infinite() : Cardinality::finite(2);
  }

  if (field == Field::Complex || dim >= 4) return Cardinality::infinite();

  // Real dim 3: count representative solutions lam*cos(delta) of
  //   cos(beta) = |cos(a)cos(g) + lam*sin(a)sin(g)cos(delta)|,
  // each interior solution carrying two lines (the sign of the e3 part).
  int count = 2;  // |gamma - (beta-alpha)| and |gamma - (alpha+beta)| interior here
  if (std::abs(std::cos(beta)) > eps) {
    const double second_family = kPi - sum;  // second sign choice enters here
    if (gamma > second_family + eps)
      count += 2;
    else if (near(gamma, second_family, eps))
      count += 1;
  }
  return Cardinality::finite(count);
}

double sphere_cap_diam(double alpha, double gamma) {
  if (!(0.0 < alpha && alpha < kPi / 2))
    throw std::invalid_argument("sphere_cap_diam: need 0 < alpha < pi/2");
  if (!(0.0 < gamma && gamma < 2.0 * alpha))
    throw std::invalid_argument("sphere_cap_diam: need 0 < gamma < 2 alpha");
  const double c = std::cos(alpha) / std::cos(gamma / 2.0);
  return std::acos(clamp_unit(2.0 * c * c - 1.0));
}

double gamma0(double alpha) {
  if (!(0.0 < alpha && alpha < kPi / 2))
    throw std::invalid_argument("gamma0: need 0 < alpha < pi/2");
  const double c = std::cos(alpha);
  return std::acos(clamp_unit(4.0 * c * c / (c + 1.0) - 1.0));
}

double proj_diam(double alpha, double gamma) {
  if (!(0.0 < alpha && alpha < kPi / 4))
    throw std::invalid_argument("proj_diam: need 0 < alpha < pi/4");
  if (!(0.0 < gamma && gamma < 2.0 * alpha))
    throw std::invalid_argument("proj_diam: need 0 < gamma < 2 alpha");
  const double ca2 = std::cos(alpha) * std::cos(alpha);
  const double sg2 = std::sin(gamma / 2.0) * std::sin(gamma / 2.0);
  const double cg2 = std::cos(gamma / 2.0) * std::cos(gamma / 2.0);
  const double ratio = (ca2 - sg2) / (cg2 - sg2);
  return 2.0 * std::acos(clamp_unit(std::sqrt(std::max(0.0, ratio))));
}

double dim3_pi3_cross_angles(double gamma) {
  if (!(kPi / 3 < gamma && gamma <= kPi / 2 + 1e-12))
    throw std::invalid_argument("dim3_pi3_cross_angles: need pi/3 < gamma <= pi/2");
  const double s2 = std::sin(gamma / 2.0) * std::sin(gamma / 2.0);
  const double c2 = std::cos(gamma / 2.0) * std::cos(gamma / 2.0);
  return std::sqrt(std::max(0.0, 1.0 - 0.25 / s2)) *
         std::sqrt(std::max(0.0, 1.0 - 0.25 / c2));
}

double ortho_circle_angles(const Complex& lam, const Complex& mu) {
  return std::acos(clamp_unit(std::abs(1.0 + lam * std::conj(mu)) / 2.0));
}

std::pair<double, double> beta_pair(double alpha) {
  if (!(kPi / 3 < alpha && alpha < kPi / 2))
    throw std::invalid_argument("beta_pair: need pi/3 < alpha < pi/2");
  const double c = std::cos(alpha);
  const double b1 = std::acos(clamp_unit(1.0 - 1.0 / (1.0 + c)));
  const double b2 = std::acos(clamp_unit(1.0 - 1.0 / (1.0 - c)));
  return {b1, b2};
}

RealVec tilde_point(const RealVec& x, const RealVec& u, double eps) {
  const double ang = sphere_angle(x, u);
  if (std::abs(ang - 2.0 * kPi / 3.0) > eps)
    throw std::invalid_argument("tilde_point: angle(x,u) must be 2pi/3");
  RealVec t = 2.0 * inner(u, x) * x - u;
  return t / t.norm();
}

// ---------------------------------------------------------------------------
// SphereCapIntersection

SphereCapIntersection::SphereCapIntersection(const RealVec& x, const RealVec& y,
                                             double alpha)
    : x_(x / x.norm()), y_(y / y.norm()), alpha_(alpha) {
  if (x.size() != y.size() || x.size() < 3)
    throw std::invalid_argument("sphere_cap_pair_set: need matching dim >= 3");
  if (!(0.0 < alpha && alpha < kPi / 2))
    throw std::invalid_argument("sphere_cap_pair_set: need 0 < alpha < pi/2");
  gamma_ = sphere_angle(x_, y_);
  if (!(0.0 < gamma_ && gamma_ < 2.0 * alpha))
    throw std::invalid_argument("sphere_cap_pair_set: need 0 < angle(x,y) < 2 alpha");
  RealVec s = x_ + y_;
  RealVec d = x_ - y_;
  e1_ = s / s.norm();
  e2_ = d / d.norm();
  auto frame = orthonormal_extend<double>({e1_, e2_}, static_cast<int>(x.size()));
  comp_.assign(frame.begin() + 2, frame.end());
  c1_ = std::cos(alpha_) / std::cos(gamma_ / 2.0);
  c3_ = std::sqrt(std::max(0.0, 1.0 - c1_ * c1_));
}

std::vector<RealVec> SphereCapIntersection::materialize(int resolution) const {
  if (resolution < 1) throw std::invalid_argument("materialize: resolution < 1");
  std::vector<RealVec> out;
  const int m = static_cast<int>(comp_.size());
  if (m == 1) {
    out.push_back(c1_ * e1_ + c3_ * comp_[0]);
    out.push_back(c1_ * e1_ - c3_ * comp_[0]);
    return out;
  }
  // e3 swept over a deterministic great-circle net of the orthocomplement
  Rng rng(20240901u);
  for (int i = 0; i < resolution; ++i) {
    RealVec e3 = RealVec::Zero(x_.size());
    if (m == 2) {
      const double t = 2.0 * kPi * i / resolution;
      e3 = std::cos(t) * comp_[0] + std::sin(t) * comp_[1];
    } else {
      RealVec coeff(m);
      for (int k = 0; k < m; ++k) coeff[k] = rng.gaussian();
      coeff /= coeff.norm();
      for (int k = 0; k < m; ++k) e3 += coeff[k] * comp_[k];
    }
    out.push_back(c1_ * e1_ + c3_ * e3);
  }
  return out;
}

double SphereCapIntersection::membership_residual(
    const std::vector<RealVec>& samples) const {
  double worst = 0.0;
  for (const auto& s : samples) {
    worst = std::max(worst, std::abs(sphere_angle(s, x_) - alpha_));
    worst = std::max(worst, std::abs(sphere_angle(s, y_) - alpha_));
  }
  return worst;
}

SphereCapIntersection sphere_cap_pair_set(const RealVec& x, const RealVec& y,
                                          double alpha) {
  return SphereCapIntersection(x, y, alpha);
}

// ---------------------------------------------------------------------------
// ProjCapIntersection

ProjCapIntersection::ProjCapIntersection(const ComplexLine& v, const ComplexLine& w,
                                         double alpha)
    : v_(v), w_(w), alpha_(alpha) {
  if (v.dim() != w.dim() || v.dim() < 3)
    throw std::invalid_argument("proj_cap_pair_set: need matching dim >= 3");
  gamma_ = line_angle(v, w);
  if (std::abs(alpha - kPi / 4) <= 1e-12 && std::abs(gamma_ - kPi / 2) <= 1e-12) {
    ortho_circle_ = true;
    e1_ = v.rep();
    e2_ = w.rep();
    return;
  }
  if (!(0.0 < alpha && alpha < kPi / 4))
    throw std::invalid_argument(
        "proj_cap_pair_set: need 0 < alpha < pi/4 (or alpha = pi/4 with orthogonal lines)");
  if (!(0.0 < gamma_ && gamma_ < 2.0 * alpha))
    throw std::invalid_argument("proj_cap_pair_set: need 0 < angle(v,w) < 2 alpha");
  auto [e1, e2] = bisector_frame(v, w);
  e1_ = e1;
  e2_ = e2;
  auto frame = orthonormal_extend<Complex>({e1_, e2_}, v.dim());
  comp_.assign(frame.begin() + 2, frame.end());
}

double ProjCapIntersection::coeff_e1(double eps) const {
  const double ca2 = std::cos(alpha_) * std::cos(alpha_);
  const double sg2 = std::sin(gamma_ / 2.0) * std::sin(gamma_ / 2.0);
  const double cg2 = std::cos(gamma_ / 2.0) * std::cos(gamma_ / 2.0);
  const double ce2 = std::cos(eps) * std::cos(eps);
  return std::sqrt(std::max(0.0, (ca2 - sg2 * ce2) / (cg2 - sg2 * ce2)));
}

double ProjCapIntersection::coeff_rest(double eps) const {
  const double ca2 = std::cos(alpha_) * std::cos(alpha_);
  const double sg2 = std::sin(gamma_ / 2.0) * std::sin(gamma_ / 2.0);
  const double cg2 = std::cos(gamma_ / 2.0) * std::cos(gamma_ / 2.0);
  const double ce2 = std::cos(eps) * std::cos(eps);
  return std::sqrt(std::max(0.0, (cg2 - ca2) / (cg2 - sg2 * ce2)));
}

std::vector<ComplexLine> ProjCapIntersection::materialize(int resolution) const {
  if (resolution < 1) throw std::invalid_argument("materialize: resolution < 1");
  std::vector<ComplexLine> out;
  if (ortho_circle_) {
    const double r = std::sqrt(0.5);
    for (int i = 0; i < resolution; ++i) {
      const double t = 2.0 * kPi * i / resolution;
      out.emplace_back(ComplexVec(r * e1_ + Complex(std::cos(t), std::sin(t)) * r * e2_));
    }
    return out;
  }
  const Complex lams[2] = {Complex(0, 1), Complex(0, -1)};
  const int n_eps = std::max(2, resolution / 8);
  const int n_phase = std::max(2, resolution / (4 * n_eps) + 2);
  for (int i = 0; i < n_eps; ++i) {
    const double eps = (kPi / 2.0) * i / (n_eps - 1);
    const double a = coeff_e1(eps);
    const double b = coeff_rest(eps);
    for (const Complex& lam : lams) {
      for (int p = 0; p < n_phase; ++p) {
        const double t = 2.0 * kPi * p / n_phase;
        ComplexVec e3 = Complex(std::cos(t), std::sin(t)) * comp_[0];
        ComplexVec u = a * e1_ + lam * b * std::cos(eps) * e2_ + b * std::sin(eps) * e3;
        if (u.norm() > 1e-12) out.emplace_back(u);
      }
    }
  }
  return out;
}

double ProjCapIntersection::membership_residual(
    const std::vector<ComplexLine>& samples) const {
  double worst = 0.0;
  const double target = ortho_circle_ ? kPi / 4 : alpha_;
  for (const auto& s : samples) {
    worst = std::max(worst, std::abs(line_angle(s, v_) - target));
    worst = std::max(worst, std::abs(line_angle(s, w_) - target));
  }
  return worst;
}

ProjCapIntersection proj_cap_pair_set(const ComplexLine& v, const ComplexLine& w,
                                      double alpha) {
  return ProjCapIntersection(v, w, alpha);
}

std::pair<ComplexLine, ComplexLine> proj_extremal_pair(const ComplexLine& v,
                                                       const ComplexLine& w,
                                                       double alpha) {
  if (!(0.0 < alpha && alpha < kPi / 4))
    throw std::invalid_argument("proj_extremal_pair: need 0 < alpha < pi/4");
  const double gamma = line_angle(v, w);
  if (!(0.0 < gamma && gamma < 2.0 * alpha))
    throw std::invalid_argument("proj_extremal_pair: need 0 < angle(v,w) < 2 alpha");
  auto [e1, e2] = bisector_frame(v, w);
  const double ca2 = std::cos(alpha) * std::cos(alpha);
  const double sg2 = std::sin(gamma / 2.0) * std::sin(gamma / 2.0);
  const double cg2 = std::cos(gamma / 2.0) * std::cos(gamma / 2.0);
  const double a = std::sqrt(std::max(0.0, (ca2 - sg2) / (cg2 - sg2)));
  const double b = std::sqrt(std::max(0.0, (cg2 - ca2) / (cg2 - sg2)));
  ComplexVec u1 = a * e1 + Complex(0, 1) * b * e2;
  ComplexVec u2 = a * e1 - Complex(0, 1) * b * e2;
  return {ComplexLine(u1), ComplexLine(u2)};
}

std::vector<RealLine> dim3_real_intersection(const RealLine& x, const RealLine& y,
                                             double alpha) {
  if (x.dim() != 3 || y.dim() != 3)
    throw std::invalid_argument("dim3_real_intersection: need dim 3");
  if (!(kPi / 3 < alpha && alpha < kPi / 2))
    throw std::invalid_argument("dim3_real_intersection: need pi/3 < alpha < pi/2");
  const double gamma = line_angle(x, y);
  if (!(gamma > 0.0))
    throw std::invalid_argument("dim3_real_intersection: lines coincide");
  auto [e1, e2] = bisector_frame(x, y);
  RealVec e3(3);
  e3 << e1[1] * e2[2] - e1[2] * e2[1], e1[2] * e2[0] - e1[0] * e2[2],
      e1[0] * e2[1] - e1[1] * e2[0];
  e3 /= e3.norm();

  std::vector<RealLine> out;
  auto push_unique = [&out](const RealVec& u) {
    RealLine line(u);
    for (const auto& l : out)
      if (l.approx_equal(line, 1e-8)) return;
    out.push_back(line);
  };

  const double t2 = std::cos(alpha) / std::sin(gamma / 2.0);
  if (t2 <= 1.0 + 1e-12) {
    const double r = std::sqrt(std::max(0.0, 1.0 - std::min(1.0, t2) * std::min(1.0, t2)));
    push_unique(std::min(1.0, t2) * e2 + r * e3);
    push_unique(std::min(1.0, t2) * e2 - r * e3);
  }
  const double t1 = std::cos(alpha) / std::cos(gamma / 2.0);
  if (t1 <= 1.0 + 1e-12) {
    const double r = std::sqrt(std::max(0.0, 1.0 - std::min(1.0, t1) * std::min(1.0, t1)));
    push_unique(std::min(1.0, t1) * e1 + r * e3);
    push_unique(std::min(1.0, t1) * e1 - r * e3);
  }
  return out;
}

}  // namespace angleforge
