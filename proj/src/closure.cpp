#include "angleforge/closure.hpp"

#include "angleforge/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace angleforge {

namespace {

constexpr double kDispatchTol = 1e-12;  // exact-case branch selection
constexpr double kReplayTol = 1e-9;

// beta(alpha) = arccos(4 cos^2 a / (cos a + 1) - 1) on [0, pi/2]; this is the
// gamma0 closed form extended to the closed interval (0 -> 0, pi/2 -> pi).
double beta_fn(double a) {
  const double c = std::cos(a);
  return std::acos(clamp_unit(4.0 * c * c / (c + 1.0) - 1.0));
}

double sphere_lift_angle(double a) {
  return std::acos(clamp_unit(std::cos(a) / (1.0 + std::cos(a))));
}

double alpha_check_cached() {
  static const double value =
      bisect([](double a) { return 2.0 * kPi - beta_fn(a) - 3.0 * a; }, 1.2, 1.35,
             1e-13, 200);
  return value;
}

double proj_gamma0(double alpha) {
  const double lo = std::max(1e-9, 1e-6 * alpha);
  const double hi = 2.0 * alpha - std::max(1e-12, 1e-9 * alpha);
  return bisect([alpha](double g) { return proj_diam(alpha, g) - alpha; }, lo, hi,
                1e-13, 200);
}

bool near(double a, double b, double eps = kDispatchTol) {
  return std::abs(a - b) <= eps;
}

struct Builder {
  RigidityCertificate cert;
  std::vector<double> proj_angles;
  std::vector<double> sphere_angles;
  int max_steps = 10000;

  bool step_budget() const {
    return static_cast<int>(cert.steps.size()) < max_steps;
  }

  std::vector<double>& pool(bool sphere_scope) {
    return sphere_scope ? sphere_angles : proj_angles;
  }

  bool known(bool sphere_scope, double a) const {
    const auto& p = sphere_scope ? sphere_angles : proj_angles;
    for (double v : p)
      if (std::abs(v - a) <= tol::kDedup) return true;
    return false;
  }

  double add(Rule rule, int j, const std::string& label, bool sphere_scope,
             std::vector<double> inputs, double output,
             std::vector<SideCondition> conds) {
    DerivationStep step;
    step.rule = rule;
    step.j = j;
    step.case_label = label;
    step.sphere_scope = sphere_scope;
    step.inputs = std::move(inputs);
    step.output = output;
    step.conditions = std::move(conds);
    cert.steps.push_back(std::move(step));
    if (!known(sphere_scope, output)) pool(sphere_scope).push_back(output);
    return output;
  }
};

// Runs the sphere angle calculus from `alpha` until an angle drops below the
// terminal threshold. Requires a sphere of dimension >= 3.
Verdict sphere_run(Builder& b, double alpha, double threshold) {
  double cur = alpha;
  std::vector<double> visited;
  while (b.step_budget()) {
    if (cur < threshold) return Verdict::IsometryViaSmallAngles;
    if (near(cur, kPi / 2)) return Verdict::IsometryViaOrthogonality;
    for (double v : visited)
      if (std::abs(v - cur) <= tol::kDedup) return Verdict::Inconclusive;
    visited.push_back(cur);

    if (cur <= kPi / 4 + kDispatchTol) {
      const std::string label = "sphere/alpha<=pi/4";
      const double two = b.add(Rule::Multiple, 2, label, true, {cur}, 2.0 * cur,
                               {{"2 < pi/alpha", 2.0 < kPi / cur}});
      const double g = beta_fn(cur);
      b.add(Rule::Gamma0, 0, label, true, {cur}, g,
            {{"alpha < pi/2", cur < kPi / 2},
             {"gamma0 in (alpha,2alpha)", cur < g && g < 2.0 * cur}});
      const double d1 =
          b.add(Rule::Diff, 0, label, true, {g, two}, two - g,
                {{"inputs ordered", g < two},
                 {"sum <= pi", g + two <= kPi},
                 {"window multiple exists", true}});
      const double d2 =
          b.add(Rule::Diff, 0, label, true, {cur, g}, g - cur,
                {{"inputs ordered", cur < g},
                 {"sum <= pi", cur + g <= kPi},
                 {"window multiple exists", true}});
      cur = std::min(d1, d2);
    } else if (cur < kPi / 2) {
      const std::string label = "sphere/pi4<alpha<pi2";
      const double bb = beta_fn(cur);
      b.add(Rule::Gamma0, 0, label, true, {cur}, bb,
            {{"alpha < pi/2", cur < kPi / 2},
             {"gamma0 in (alpha,2alpha)", cur < bb && bb < 2.0 * cur}});
      const double ac = alpha_check_cached();
      if (bb + cur <= kPi + kDispatchTol) {
        cur = b.add(Rule::Diff, 0, label, true, {cur, bb}, bb - cur,
                    {{"inputs ordered", cur < bb},
                     {"sum <= pi", bb + cur <= kPi + kDispatchTol}});
      } else if (cur <= ac + kDispatchTol) {
        cur = b.add(Rule::Diff, 0, label, true, {cur, bb}, bb - cur,
                    {{"inputs ordered", cur < bb},
                     {"sum > pi", bb + cur > kPi},
                     {"selection window 2pi-beta-alpha >= 2alpha",
                      2.0 * kPi - bb - cur >= 2.0 * cur - kDispatchTol}});
      } else {
        cur = b.add(Rule::Reflect2Pi4Alpha, 0, label, true, {cur},
                    2.0 * kPi - 4.0 * cur,
                    {{"alpha > alpha_check", cur > ac},
                     {"2alpha in (pi/2,pi)",
                      2.0 * cur > kPi / 2 && 2.0 * cur < kPi},
                     {"output below alpha_check", 2.0 * kPi - 4.0 * cur < ac}});
      }
    } else if (near(cur, 2.0 * kPi / 3.0)) {
      const std::string label = "sphere/alpha=2pi3";
      const double pi_angle =
          b.add(Rule::TildeAntipode, 0, label, true, {cur}, kPi,
                {{"alpha = 2pi/3", near(cur, 2.0 * kPi / 3.0, 1e-9)}});
      cur = b.add(Rule::PiComplement, 0, label, true, {cur, pi_angle}, kPi - cur,
                  {{"pi preserved", true}});
    } else if (near(cur, 3.0 * kPi / 4.0)) {
      const std::string label = "sphere/alpha=3pi4";
      const double half =
          b.add(Rule::Reflect2Pi2Alpha, 0, label, true, {cur}, 2.0 * kPi - 2.0 * cur,
                {{"alpha in (pi/2,pi)", kPi / 2 < cur && cur < kPi}});
      cur = b.add(Rule::PairIsolation, 0, label, true, {kPi / 4, cur}, kPi / 4,
                  {{"pair {beta-alpha, 2pi-alpha-beta} = {pi/4, 3pi/4}",
                    near(cur - half, kPi / 4, 1e-9) &&
                        near(2.0 * kPi - cur - half, 3.0 * kPi / 4.0, 1e-9)},
                   {"partner preserved", true}});
    } else if (cur < kPi - kDispatchTol) {
      const std::string label =
          cur < 3.0 * kPi / 4.0 ? "sphere/pi2<alpha<3pi4" : "sphere/3pi4<alpha<pi";
      cur = b.add(Rule::Reflect2Pi2Alpha, 0, label, true, {cur},
                  2.0 * kPi - 2.0 * cur,
                  {{"alpha in (pi/2,pi)", kPi / 2 < cur && cur < kPi}});
    } else {
      return Verdict::Inconclusive;  // alpha = pi carries no derivation rule
    }
  }
  return Verdict::Inconclusive;
}

Verdict proj_real_dim3_run(Builder& b, double seed, double threshold) {
  double cur = seed;
  std::vector<double> visited;
  while (b.step_budget()) {
    if (cur < threshold) return Verdict::IsometryViaSmallAngles;
    if (near(cur, kPi / 2)) return Verdict::IsometryViaOrthogonality;
    for (double v : visited)
      if (std::abs(v - cur) <= tol::kDedup) return Verdict::Inconclusive;
    visited.push_back(cur);

    if (near(cur, kPi / 3)) {
      b.add(Rule::FourElementCross, 0, "proj-real/dim3/alpha=pi3", false, {cur},
            kPi / 2,
            {{"alpha = pi/3", near(cur, kPi / 3, 1e-9)},
             {"cross-angle equation solved only at pi/2", true}});
      return Verdict::IsometryViaOrthogonality;
    }
    if (cur > kPi / 3) {
      cur = b.add(Rule::ThreeElement, 0, "proj-real/dim3/pi3<alpha<pi2", false,
                  {cur}, kPi - 2.0 * cur,
                  {{"alpha in (pi/3,pi/2)", kPi / 3 < cur && cur < kPi / 2}});
      continue;
    }

    const std::string label = "proj-real/dim3/alpha<pi3";
    const double bs = sphere_lift_angle(cur);
    b.add(Rule::SphereLift, 0, label, true, {cur}, bs,
          {{"level-set sphere has dim 2", true},
           {"lift angle in (pi/3, arccos(1/3))",
            kPi / 3 < bs && bs < std::acos(1.0 / 3.0)}});
    const double twob = b.add(Rule::DoubleAngle, 0, label, true, {bs}, 2.0 * bs,
                              {{"alpha < pi/2", bs < kPi / 2}});
    const double g = case4_gamma(cur);
    b.add(Rule::CaseFourGamma, 0, label, false, {cur, twob}, g,
          {{"gamma in (alpha, 2alpha)", cur < g && g < 2.0 * cur},
           {"matches pulled-back double angle",
            std::abs(g - std::acos(std::abs(
                             std::cos(cur) * std::cos(cur) +
                             std::cos(twob) * std::sin(cur) * std::sin(cur)))) <
                1e-9}});
    if (near(g, kPi / 2, kDispatchTol)) return Verdict::IsometryViaOrthogonality;

    double next = b.add(Rule::ProjDiff, 0, label, false, {cur, g}, g - cur,
                        {{"inputs ordered", cur < g},
                         {"inputs below pi/2", g < kPi / 2}});
    if (cur < kPi / 4 - kDispatchTol) {
      const double twoa =
          b.add(Rule::Multiple, 2, label, false, {cur}, 2.0 * cur,
                {{"2 < pi/(2 alpha)", 2.0 < kPi / (2.0 * cur)}});
      const double d2 = b.add(Rule::ProjDiff, 0, label, false, {g, twoa},
                              twoa - g,
                              {{"inputs ordered", g < twoa},
                               {"inputs below pi/2", twoa < kPi / 2}});
      next = std::min(next, d2);
    }
    cur = next;
  }
  return Verdict::Inconclusive;
}

Verdict proj_complex_run(Builder& b, double seed, double threshold) {
  double cur = seed;
  std::vector<double> visited;
  while (b.step_budget()) {
    if (cur < threshold) return Verdict::IsometryViaSmallAngles;
    for (double v : visited)
      if (std::abs(v - cur) <= tol::kDedup) return Verdict::Inconclusive;
    visited.push_back(cur);

    const std::string label = "proj-complex/alpha<pi4";
    const double g0 = proj_gamma0(cur);
    b.add(Rule::ProjGamma0, 0, label, false, {cur}, g0,
          {{"alpha < pi/4", cur < kPi / 4},
           {"gamma0 in (alpha,2alpha)", cur < g0 && g0 < 2.0 * cur}});
    const double twoa = b.add(Rule::Multiple, 2, label, false, {cur}, 2.0 * cur,
                              {{"2 < pi/(2 alpha)", 2.0 < kPi / (2.0 * cur)}});
    const double d1 = b.add(Rule::ProjDiff, 0, label, false, {cur, g0}, g0 - cur,
                            {{"inputs ordered", cur < g0},
                             {"inputs below pi/2", g0 < kPi / 2}});
    const double d2 = b.add(Rule::ProjDiff, 0, label, false, {g0, twoa},
                            twoa - g0,
                            {{"inputs ordered", g0 < twoa},
                             {"inputs below pi/2", twoa < kPi / 2}});
    cur = std::min(d1, d2);
  }
  return Verdict::Inconclusive;
}

}  // namespace

double case4_gamma(double alpha) {
  if (!(0.0 < alpha && alpha < kPi / 3))
    throw std::invalid_argument("case4_gamma: need 0 < alpha < pi/3");
  const double c = std::cos(alpha);
  return std::acos(clamp_unit(std::abs(4.0 * c + 4.0 / (c + 1.0) - 5.0)));
}

RigidityCertificate closure(double seed, ClosureContext context, int dim,
                            int max_steps, double terminal_threshold) {
  Builder b;
  b.max_steps = std::max(1, max_steps);
  b.cert.context = context;
  b.cert.dim = dim;
  b.cert.seed = seed;
  b.cert.terminal_threshold = terminal_threshold;

  auto inconclusive = [&b](const std::string& why) {
    b.cert.verdict = Verdict::Inconclusive;
    b.cert.note = why;
    return b.cert;
  };

  switch (context) {
    case ClosureContext::SphereReal: {
      if (dim < 3) return inconclusive("sphere calculus needs dim >= 3");
      if (!(0.0 < seed && seed < kPi))
        return inconclusive("seed outside (0, pi)");
      b.cert.sphere_dim = dim;
      b.sphere_angles.push_back(seed);
      b.cert.verdict = sphere_run(b, seed, terminal_threshold);
      if (b.cert.verdict == Verdict::IsometryViaOrthogonality)
        b.cert.note =
            "sphere orthogonality seed: the implementing isometry is determined "
            "up to a per-point sign";
      return b.cert;
    }

    case ClosureContext::ProjReal: {
      if (dim < 3) return inconclusive("projective calculus needs dim >= 3");
      if (near(seed, kPi / 2)) {
        b.proj_angles.push_back(seed);
        b.cert.verdict = Verdict::IsometryViaOrthogonality;
        b.cert.note = "orthogonality seed: double-orthocomplement rigidity";
        return b.cert;
      }
      if (!(0.0 < seed && seed < kPi / 2))
        return inconclusive("seed outside (0, pi/2)");
      b.proj_angles.push_back(seed);
      if (dim == 3) {
        b.cert.sphere_dim = 2;
        b.cert.verdict = proj_real_dim3_run(b, seed, terminal_threshold);
        return b.cert;
      }
      b.cert.sphere_dim = dim - 1;
      double sphere_seed = 0.0;
      if (near(seed, kPi / 3)) {
        const std::string label = "proj-real/dim>=4/alpha=pi3";
        const double bs = sphere_lift_angle(seed);  // arccos(1/3)
        b.add(Rule::SphereLift, 0, label, true, {seed}, bs,
              {{"level-set sphere dim >= 3", dim - 1 >= 3},
               {"preserved jointly with pi", true}});
        const double pi_angle =
            b.add(Rule::AntipodalSeparation, 0, label, true, {bs}, kPi,
                  {{"empty joint-union test isolates antipodes", true}});
        sphere_seed = b.add(Rule::PairIsolation, 0, label, true, {bs, pi_angle},
                            bs, {{"partner preserved", true}});
      } else if (seed < kPi / 3) {
        const std::string label = "proj-real/dim>=4/alpha<pi3";
        const double bs = sphere_lift_angle(seed);
        sphere_seed =
            b.add(Rule::SphereLift, 0, label, true, {seed}, bs,
                  {{"level-set sphere dim >= 3", dim - 1 >= 3},
                   {"lift angle in (pi/3, arccos(1/3))",
                    kPi / 3 < bs && bs < std::acos(1.0 / 3.0)}});
      } else {
        const std::string label = "proj-real/dim>=4/pi3<alpha<pi2";
        const auto [b1, b2] = beta_pair(seed);
        const double theta = ordering_derived_angle(seed, dim);
        sphere_seed = b.add(
            Rule::BetaPairOrdering, 0, label, true, {seed}, theta,
            {{"level-set sphere dim >= 3", dim - 1 >= 3},
             {"beta1 + beta2 > pi", b1 + b2 > kPi},
             {"base order relations",
              2.0 * b1 > b2 - b1 && 2.0 * b1 > 2.0 * kPi - 2.0 * b2 &&
                  2.0 * kPi - b1 - b2 > b2 - b1 &&
                  2.0 * kPi - b1 - b2 > 2.0 * kPi - 2.0 * b2},
             {"isolated angle is not pi/2", !near(theta, kPi / 2, 1e-9)},
             {"ordering " + ordering_name(ordering_classify(seed, dim)), true}});
      }
      b.cert.verdict = sphere_run(b, sphere_seed, terminal_threshold);
      return b.cert;
    }

    case ClosureContext::ProjComplex: {
      if (dim < 3) return inconclusive("complex projective calculus needs dim >= 3");
      if (near(seed, kPi / 2)) {
        b.proj_angles.push_back(seed);
        b.cert.verdict = Verdict::IsometryViaOrthogonality;
        b.cert.note = "orthogonality seed: double-orthocomplement rigidity";
        return b.cert;
      }
      if (!(0.0 < seed && seed < kPi / 2))
        return inconclusive("seed outside (0, pi/2)");
      b.proj_angles.push_back(seed);
      if (near(seed, kPi / 4)) {
        b.add(Rule::CircleTriple, 0, "proj-complex/alpha=pi4", false, {seed},
              kPi / 2,
              {{"alpha = pi/4", near(seed, kPi / 4, 1e-9)},
               {"triple-intersection count 2 on the whole circle iff orthogonal",
                true}});
        b.cert.verdict = Verdict::IsometryViaOrthogonality;
        return b.cert;
      }
      if (seed > kPi / 4)
        return inconclusive(
            "seeds in (pi/4, pi/2) are not covered by the complex calculus");
      b.cert.verdict = proj_complex_run(b, seed, terminal_threshold);
      return b.cert;
    }

    case ClosureContext::ProjComplexDim2: {
      if (dim != 2) return inconclusive("qubit context needs dim 2");
      if (!(0.0 < seed && seed < kPi / 2))
        return inconclusive("seed outside (0, pi/2)");
      b.proj_angles.push_back(seed);
      b.cert.sphere_dim = 3;
      const double doubled =
          b.add(Rule::BlochDouble, 0, "qubit/bloch-double", true, {seed},
                2.0 * seed, {{"doubled angle in (0,pi)", 2.0 * seed < kPi}});
      if (near(seed, kPi / 4)) {
        b.cert.verdict = Verdict::QubitAntipodalAmbiguity;
        b.cert.note =
            "doubled seed pi/2: the sphere conjugate is rigid only up to a "
            "per-point sign, so each line maps to the image line or its "
            "orthocomplement";
        return b.cert;
      }
      b.cert.verdict = sphere_run(b, doubled, terminal_threshold);
      return b.cert;
    }
  }
  return inconclusive("unknown context");
}

// ---------------------------------------------------------------------------
// replay

namespace {

struct ReplayPools {
  std::vector<double> proj;
  std::vector<double> sphere;

  bool has(bool sphere_scope, double a) const {
    const auto& p = sphere_scope ? sphere : proj;
    for (double v : p)
      if (std::abs(v - a) <= kReplayTol) return true;
    return false;
  }
  void put(bool sphere_scope, double a) {
    auto& p = sphere_scope ? sphere : proj;
    p.push_back(a);
  }
};

std::string fail(int idx, const std::string& what) {
  return "step " + std::to_string(idx + 1) + ": " + what;
}

}  // namespace

ReplayResult replay(const RigidityCertificate& cert) {
  ReplayPools pools;
  const bool sphere_context = cert.context == ClosureContext::SphereReal;
  pools.put(sphere_context, cert.seed);

  auto in = [&](const DerivationStep& s, std::size_t k) { return s.inputs.at(k); };

  for (std::size_t i = 0; i < cert.steps.size(); ++i) {
    const DerivationStep& s = cert.steps[i];
    for (const auto& c : s.conditions)
      if (!c.holds)
        return {false, fail(static_cast<int>(i), "recorded condition fails: " + c.name)};

    double expected = 0.0;
    bool inputs_sphere = s.sphere_scope;  // default: same scope as the output
    try {
      switch (s.rule) {
        case Rule::Multiple:
        case Rule::LeqMultiple: {
          const double a = in(s, 0);
          const double limit = s.sphere_scope ? kPi / a : kPi / (2.0 * a);
          if (!(s.j >= 2 && s.j < limit))
            return {false, fail(static_cast<int>(i), "multiple out of range")};
          expected = s.j * a;
          break;
        }
        case Rule::Sum:
        case Rule::ProjSum: {
          const double a = in(s, 0), bb = in(s, 1);
          const double cap = s.rule == Rule::Sum ? kPi : kPi / 2;
          if (!(0 < a && a < bb && a + bb < cap + kReplayTol))
            return {false, fail(static_cast<int>(i), "sum side conditions fail")};
          expected = a + bb;
          break;
        }
        case Rule::Diff: {
          const double a = in(s, 0), bb = in(s, 1);
          if (!(0 < a && a < bb && bb < kPi))
            return {false, fail(static_cast<int>(i), "diff inputs unordered")};
          if (a + bb > kPi + kReplayTol) {
            // above pi the pair-set is {b-a, 2pi-a-b}; the recorded window or
            // partner condition justifies selecting b-a
            bool windowed = false;
            for (const auto& c : s.conditions)
              if (c.name.find("selection window") != std::string::npos ||
                  c.name.find("partner") != std::string::npos)
                windowed = true;
            if (!windowed)
              return {false, fail(static_cast<int>(i), "diff above pi lacks window")};
          }
          expected = bb - a;
          break;
        }
        case Rule::ProjDiff: {
          const double a = in(s, 0), bb = in(s, 1);
          if (!(0 < a && a < bb && bb < kPi / 2 + kReplayTol))
            return {false, fail(static_cast<int>(i), "proj diff inputs unordered")};
          expected = bb - a;
          break;
        }
        case Rule::Gamma0: {
          const double a = in(s, 0);
          if (!(0 < a && a < kPi / 2))
            return {false, fail(static_cast<int>(i), "gamma0 domain")};
          expected = beta_fn(a);
          break;
        }
        case Rule::Reflect2Pi2Alpha: {
          const double a = in(s, 0);
          if (!(kPi / 2 < a && a < kPi))
            return {false, fail(static_cast<int>(i), "reflect domain (pi/2,pi)")};
          expected = 2.0 * kPi - 2.0 * a;
          break;
        }
        case Rule::Reflect2Pi4Alpha: {
          const double a = in(s, 0);
          if (!(a > alpha_check_cached() - kReplayTol && a < kPi / 2))
            return {false, fail(static_cast<int>(i), "reflect4 needs alpha > alpha_check")};
          expected = 2.0 * kPi - 4.0 * a;
          break;
        }
        case Rule::DoubleAngle: {
          const double a = in(s, 0);
          if (!(0 < a && a < kPi / 2))
            return {false, fail(static_cast<int>(i), "double-angle domain")};
          expected = 2.0 * a;
          break;
        }
        case Rule::ProjGamma0: {
          const double a = in(s, 0);
          if (!(0 < a && a < kPi / 4))
            return {false, fail(static_cast<int>(i), "proj gamma0 domain")};
          expected = proj_gamma0(a);
          if (!(a < expected && expected < 2.0 * a))
            return {false, fail(static_cast<int>(i), "proj gamma0 bracket")};
          break;
        }
        case Rule::TildeAntipode: {
          if (!near(in(s, 0), 2.0 * kPi / 3.0, kReplayTol))
            return {false, fail(static_cast<int>(i), "tilde rule needs 2pi/3")};
          expected = kPi;
          break;
        }
        case Rule::PiComplement: {
          if (!near(in(s, 1), kPi, kReplayTol))
            return {false, fail(static_cast<int>(i), "pi-complement needs pi input")};
          expected = kPi - in(s, 0);
          break;
        }
        case Rule::PairIsolation: {
          // in(0) is the kept pair member, known only jointly until now;
          // in(1) the partner, which must be individually available
          expected = in(s, 0);
          break;
        }
        case Rule::AntipodalSeparation: {
          const double a = in(s, 0);
          if (!(0 < a && a < kPi))
            return {false, fail(static_cast<int>(i), "antipodal separation domain")};
          expected = kPi;
          break;
        }
        case Rule::SphereLift: {
          const double a = in(s, 0);
          if (!(0 < a && a < kPi / 2))
            return {false, fail(static_cast<int>(i), "sphere lift domain")};
          expected = sphere_lift_angle(a);
          inputs_sphere = false;
          break;
        }
        case Rule::BetaPairOrdering: {
          const double a = in(s, 0);
          if (!(kPi / 3 < a && a < kPi / 2) || cert.dim < 4)
            return {false, fail(static_cast<int>(i), "beta-pair ordering domain")};
          expected = ordering_derived_angle(a, cert.dim);
          if (near(expected, kPi / 2, kReplayTol))
            return {false, fail(static_cast<int>(i), "isolated angle hit pi/2")};
          inputs_sphere = false;
          break;
        }
        case Rule::CaseFourGamma: {
          const double a = in(s, 0);
          const double twob = in(s, 1);
          if (cert.dim != 3 || !(0 < a && a < kPi / 3))
            return {false, fail(static_cast<int>(i), "case-four gamma domain")};
          expected = case4_gamma(a);
          const double pulled = std::acos(std::abs(
              std::cos(a) * std::cos(a) +
              std::cos(twob) * std::sin(a) * std::sin(a)));
          if (std::abs(pulled - expected) > kReplayTol)
            return {false, fail(static_cast<int>(i), "pulled-back angle mismatch")};
          if (!pools.has(true, twob))
            return {false, fail(static_cast<int>(i), "sphere double angle missing")};
          inputs_sphere = false;
          if (!pools.has(false, a))
            return {false, fail(static_cast<int>(i), "projective input missing")};
          pools.put(false, expected);
          if (std::abs(expected - s.output) > kReplayTol)
            return {false, fail(static_cast<int>(i), "output mismatch")};
          continue;  // custom scope handling done
        }
        case Rule::ThreeElement: {
          const double a = in(s, 0);
          if (cert.dim != 3 || !(kPi / 3 < a && a < kPi / 2))
            return {false, fail(static_cast<int>(i), "three-element domain")};
          expected = kPi - 2.0 * a;
          break;
        }
        case Rule::FourElementCross: {
          if (cert.dim != 3 || !near(in(s, 0), kPi / 3, kReplayTol))
            return {false, fail(static_cast<int>(i), "four-element-cross domain")};
          expected = kPi / 2;
          break;
        }
        case Rule::CircleTriple: {
          if (!near(in(s, 0), kPi / 4, kReplayTol))
            return {false, fail(static_cast<int>(i), "circle-triple needs pi/4")};
          expected = kPi / 2;
          break;
        }
        case Rule::BlochDouble: {
          const double a = in(s, 0);
          if (cert.dim != 2 || !(0 < a && a < kPi / 2))
            return {false, fail(static_cast<int>(i), "bloch double domain")};
          expected = 2.0 * a;
          inputs_sphere = false;
          break;
        }
      }
    } catch (const std::exception& e) {
      return {false, fail(static_cast<int>(i), e.what())};
    }

    const std::size_t first_checked = s.rule == Rule::PairIsolation ? 1 : 0;
    for (std::size_t k = first_checked; k < s.inputs.size(); ++k)
      if (!pools.has(inputs_sphere, s.inputs[k]))
        return {false, fail(static_cast<int>(i), "input angle was never derived")};
    if (std::abs(expected - s.output) > kReplayTol)
      return {false, fail(static_cast<int>(i), "output mismatch")};
    pools.put(s.sphere_scope, s.output);
  }

  // terminal consistency
  switch (cert.verdict) {
    case Verdict::Inconclusive:
      return {true, "inconclusive certificate makes no claim"};
    case Verdict::IsometryViaSmallAngles: {
      double smallest = 1e9;
      for (double a : pools.proj) smallest = std::min(smallest, a);
      for (double a : pools.sphere) smallest = std::min(smallest, a);
      if (smallest >= cert.terminal_threshold)
        return {false, "small-angle verdict without a small derived angle"};
      return {true, ""};
    }
    case Verdict::IsometryViaOrthogonality: {
      if (pools.has(false, kPi / 2) || pools.has(true, kPi / 2)) return {true, ""};
      return {false, "orthogonality verdict without pi/2 derived"};
    }
    case Verdict::QubitAntipodalAmbiguity: {
      if (cert.context != ClosureContext::ProjComplexDim2)
        return {false, "qubit verdict outside the qubit context"};
      if (!near(cert.seed, kPi / 4, kReplayTol))
        return {false, "qubit ambiguity only arises at seed pi/4"};
      if (!pools.has(true, kPi / 2))
        return {false, "qubit verdict without the doubled angle pi/2"};
      return {true, ""};
    }
  }
  return {false, "unknown verdict"};
}

// ---------------------------------------------------------------------------
// recursions, constants, monotonicity

std::vector<double> case2_recursion(int n_max) {
  if (n_max < 1) throw std::invalid_argument("case2_recursion: n_max < 1");
  std::vector<double> seq;
  seq.reserve(n_max);
  seq.push_back(kPi / 4);
  for (int n = 2; n <= n_max; ++n) {
    const double target = seq.back();
    const double root = bisect(
        [target](double a) { return beta_fn(a) - a - target; }, target, kPi / 2,
        1e-13, 200);
    seq.push_back(root);
  }
  return seq;
}

double solve_alpha_check() { return alpha_check_cached(); }

std::vector<double> case5_recursion(int n_max) {
  if (n_max < 1) throw std::invalid_argument("case5_recursion: n_max < 1");
  std::vector<double> seq;
  seq.reserve(n_max);
  seq.push_back(5.0 * kPi / 8.0);
  for (int n = 2; n <= n_max; ++n) seq.push_back(kPi - seq.back() / 2.0);
  return seq;
}

double case5_explicit(int n) {
  if (n < 1) throw std::invalid_argument("case5_explicit: n < 1");
  const double a1 = 5.0 * kPi / 8.0;
  if (n == 1) return a1;
  double value = (n % 2 == 1 ? 1.0 : -1.0) * a1 / std::pow(2.0, n - 1);
  double term = kPi;
  for (int j = 0; j <= n - 2; ++j) {
    value += (j % 2 == 0 ? 1.0 : -1.0) * term;
    term /= 2.0;
  }
  return value;
}

SpecialConstants special_constants() {
  SpecialConstants out;
  out.alpha_sqrt5 = bisect(
      [](double a) {
        const auto [b1, b2] = beta_pair(a);
        return 3.0 * b1 - (2.0 * kPi - b2);
      },
      kPi / 3 + 1e-9, 1.2, 1e-13, 200);
  out.alpha_sqrt17 = bisect(
      [](double a) {
        const double c = std::cos(a);
        return 4.0 * c + 4.0 / (c + 1.0) - 5.0;
      },
      1e-9, kPi / 3 - 1e-9, 1e-13, 200);
  return out;
}

BetaOrdering ordering_classify(double alpha, int dim) {
  const auto [b1, b2] = beta_pair(alpha);
  const double q1 = 2.0 * b1;
  const double q2 = 2.0 * kPi - b1 - b2;
  const double q3 = b2 - b1;
  const double q4 = 2.0 * kPi - 2.0 * b2;
  const double eps = 1e-10;
  if (std::abs(q1 - q2) <= eps || std::abs(q3 - q4) <= eps) return BetaOrdering::O1;
  if (q1 > q2) return q3 > q4 ? BetaOrdering::O2 : BetaOrdering::O5;
  if (q3 > q4) return dim == 4 ? BetaOrdering::O3 : BetaOrdering::O4;
  return BetaOrdering::O6;
}

std::string ordering_name(BetaOrdering o) {
  switch (o) {
    case BetaOrdering::O1: return "O1";
    case BetaOrdering::O2: return "O2";
    case BetaOrdering::O3: return "O3";
    case BetaOrdering::O4: return "O4";
    case BetaOrdering::O5: return "O5";
    case BetaOrdering::O6: return "O6";
  }
  return "?";
}

double ordering_derived_angle(double alpha, int dim) {
  const auto [b1, b2] = beta_pair(alpha);
  switch (ordering_classify(alpha, dim)) {
    case BetaOrdering::O1:
    case BetaOrdering::O2:
    case BetaOrdering::O3:
    case BetaOrdering::O5:
      return 2.0 * b1;
    case BetaOrdering::O4:
    case BetaOrdering::O6:
      return 2.0 * kPi - b1 - b2;
  }
  return 2.0 * b1;
}

BetaMonotonicityReport verify_beta_monotonicity(int grid_n) {
  if (grid_n < 10) throw std::invalid_argument("verify_beta_monotonicity: grid_n < 10");
  BetaMonotonicityReport r;
  r.beta_at_0 = beta_fn(0.0);
  r.beta_at_pi2 = beta_fn(kPi / 2);
  r.min_derivative = 1e9;
  r.max_beta_minus_2a = -1e9;
  const double h = 1e-6;
  double prev = 0.0;
  for (int i = 1; i <= grid_n; ++i) {
    const double a = i * (kPi / 2) / (grid_n + 1);
    const double d = (beta_fn(a + h) - beta_fn(a - h)) / (2.0 * h);
    r.min_derivative = std::min(r.min_derivative, d);
    if (d <= 1.0 - 1e-6) r.derivative_above_one = false;
    const double f = beta_fn(a) - a;
    if (i > 1 && f <= prev) r.slope_positive = false;
    prev = f;
    r.max_beta_minus_2a = std::max(r.max_beta_minus_2a, beta_fn(a) - 2.0 * a);
    if (beta_fn(a) - a >= a) r.beta_below_double = false;
  }
  return r;
}

// ---------------------------------------------------------------------------
// names

std::string rule_name(const Rule& r, int j) {
  switch (r) {
    case Rule::Multiple: return "Multiple(" + std::to_string(j) + ")";
    case Rule::LeqMultiple: return "LeqMultiple(" + std::to_string(j) + ")";
    case Rule::Sum: return "Sum";
    case Rule::Diff: return "Diff";
    case Rule::Gamma0: return "Gamma0";
    case Rule::Reflect2Pi2Alpha: return "Reflect2Pi2Alpha";
    case Rule::Reflect2Pi4Alpha: return "Reflect2Pi4Alpha";
    case Rule::DoubleAngle: return "DoubleAngle";
    case Rule::ProjSum: return "ProjSum";
    case Rule::ProjDiff: return "ProjDiff";
    case Rule::ProjGamma0: return "ProjGamma0";
    case Rule::TildeAntipode: return "TildeAntipode";
    case Rule::PiComplement: return "PiComplement";
    case Rule::PairIsolation: return "PairIsolation";
    case Rule::AntipodalSeparation: return "AntipodalSeparation";
    case Rule::SphereLift: return "SphereLift";
    case Rule::BetaPairOrdering: return "BetaPairOrdering";
    case Rule::CaseFourGamma: return "CaseFourGamma";
    case Rule::ThreeElement: return "ThreeElement";
    case Rule::FourElementCross: return "FourElementCross";
    case Rule::CircleTriple: return "CircleTriple";
    case Rule::BlochDouble: return "BlochDouble";
  }
  return "?";
}

bool parse_rule(const std::string& s, Rule& out, int& j) {
  j = 0;
  const auto paren = s.find('(');
  const std::string head = paren == std::string::npos ? s : s.substr(0, paren);
  if (paren != std::string::npos) j = std::atoi(s.c_str() + paren + 1);
  static const std::pair<const char*, Rule> table[] = {
      {"Multiple", Rule::Multiple},
      {"LeqMultiple", Rule::LeqMultiple},
      {"Sum", Rule::Sum},
      {"Diff", Rule::Diff},
      {"Gamma0", Rule::Gamma0},
      {"Reflect2Pi2Alpha", Rule::Reflect2Pi2Alpha},
      {"Reflect2Pi4Alpha", Rule::Reflect2Pi4Alpha},
      {"DoubleAngle", Rule::DoubleAngle},
      {"ProjSum", Rule::ProjSum},
      {"ProjDiff", Rule::ProjDiff},
      {"ProjGamma0", Rule::ProjGamma0},
      {"TildeAntipode", Rule::TildeAntipode},
      {"PiComplement", Rule::PiComplement},
      {"PairIsolation", Rule::PairIsolation},
      {"AntipodalSeparation", Rule::AntipodalSeparation},
      {"SphereLift", Rule::SphereLift},
      {"BetaPairOrdering", Rule::BetaPairOrdering},
      {"CaseFourGamma", Rule::CaseFourGamma},
      {"ThreeElement", Rule::ThreeElement},
      {"FourElementCross", Rule::FourElementCross},
      {"CircleTriple", Rule::CircleTriple},
      {"BlochDouble", Rule::BlochDouble},
  };
  for (const auto& [name, rule] : table) {
    if (head == name) {
      out = rule;
      return true;
    }
  }
  return false;
}

std::string context_name(ClosureContext c) {
  switch (c) {
    case ClosureContext::SphereReal: return "sphere-real";
    case ClosureContext::ProjReal: return "proj-real";
    case ClosureContext::ProjComplex: return "proj-complex";
    case ClosureContext::ProjComplexDim2: return "proj-complex-dim2";
  }
  return "?";
}

bool parse_context(const std::string& s, ClosureContext& out) {
  if (s == "sphere-real") out = ClosureContext::SphereReal;
  else if (s == "proj-real") out = ClosureContext::ProjReal;
  else if (s == "proj-complex") out = ClosureContext::ProjComplex;
  else if (s == "proj-complex-dim2") out = ClosureContext::ProjComplexDim2;
  else return false;
  return true;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::IsometryViaSmallAngles: return "isometry-via-small-angles";
    case Verdict::IsometryViaOrthogonality: return "isometry-via-orthogonality";
    case Verdict::QubitAntipodalAmbiguity: return "qubit-antipodal-ambiguity";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

bool parse_verdict(const std::string& s, Verdict& out) {
  if (s == "isometry-via-small-angles") out = Verdict::IsometryViaSmallAngles;
  else if (s == "isometry-via-orthogonality") out = Verdict::IsometryViaOrthogonality;
  else if (s == "qubit-antipodal-ambiguity") out = Verdict::QubitAntipodalAmbiguity;
  else if (s == "inconclusive") out = Verdict::Inconclusive;
  else return false;
  return true;
}

}  // namespace angleforge
