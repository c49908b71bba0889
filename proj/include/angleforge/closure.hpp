#pragma once

#include "angleforge/angle_sets.hpp"
#include "angleforge/core.hpp"

#include <array>
#include <string>
#include <vector>

namespace angleforge {

enum class ClosureContext { SphereReal, ProjReal, ProjComplex, ProjComplexDim2 };

enum class Verdict {
  IsometryViaSmallAngles,
  IsometryViaOrthogonality,
  QubitAntipodalAmbiguity,
  Inconclusive,
};

// Derivation rules of the angle calculus. The first block acts on one set of
// preserved angles (sphere or projective, read from the certificate context);
// the second block covers the structural reductions between the projective
// space and the spheres of level sets.
enum class Rule {
  Multiple,           // alpha -> j*alpha through unique chains
  LeqMultiple,        // window <= j*alpha used to isolate a set member
  Sum,                // (alpha,beta) -> alpha+beta
  Diff,               // (alpha,beta) -> beta-alpha
  Gamma0,             // alpha -> arccos(4cos^2 a/(cos a+1) - 1), the level-set
                      // pair diameter fixed point (doubles as beta(alpha))
  Reflect2Pi2Alpha,   // alpha in (pi/2,pi) -> 2pi-2alpha
  Reflect2Pi4Alpha,   // alpha -> 2pi-4alpha via the preserved double angle
  DoubleAngle,        // alpha -> 2alpha via single-point pair intersections
  ProjSum,            // projective sum
  ProjDiff,           // projective difference
  ProjGamma0,         // complex projective diameter fixed point (bisection)
  TildeAntipode,      // 2pi/3 -> pi through the reflection-point machinery
  PiComplement,       // (theta, pi) -> pi - theta
  PairIsolation,      // keep one member of a preserved two-set, partner known
  AntipodalSeparation,// joint {beta,pi} set -> pi via empty-union test
  SphereLift,         // projective alpha -> sphere angle on a level-set sphere
  BetaPairOrdering,   // real projective dim>=4 lift for pi/3 < alpha < pi/2
  CaseFourGamma,      // real projective dim 3 pull-back angle gamma(alpha)
  ThreeElement,       // real dim 3: pi-2alpha via three-element intersections
  FourElementCross,   // real dim 3, alpha=pi/3: orthogonality via cross angles
  CircleTriple,       // complex, alpha=pi/4: orthogonality via triple counts
  BlochDouble,        // qubit line angle alpha -> sphere angle 2alpha
};

std::string rule_name(const Rule& r, int j = 0);
std::string context_name(ClosureContext c);
std::string verdict_name(Verdict v);
bool parse_context(const std::string& s, ClosureContext& out);
bool parse_verdict(const std::string& s, Verdict& out);
bool parse_rule(const std::string& s, Rule& out, int& j);

struct SideCondition {
  std::string name;
  bool holds = true;
};

struct DerivationStep {
  Rule rule = Rule::Multiple;
  int j = 0;                    // multiplier for Multiple/LeqMultiple
  std::string case_label;       // which regime of the argument is running
  bool sphere_scope = false;    // step acts on the lifted sphere angle set
  std::vector<double> inputs;   // previously derived angles consumed
  double output = 0.0;          // the newly derived angle
  std::vector<SideCondition> conditions;
};

struct RigidityCertificate {
  ClosureContext context = ClosureContext::SphereReal;
  int dim = 3;
  double seed = 0.0;
  double terminal_threshold = 1e-3;
  int sphere_dim = 0;  // dimension of the lifted sphere, when a lift occurred
  std::vector<DerivationStep> steps;
  Verdict verdict = Verdict::Inconclusive;
  std::string note;
};

// Derives provably-preserved angles from the seed until a rigidity terminal
// (angles below terminal_threshold, or orthogonality) or gives up with
// Inconclusive. Never claims rigidity for seeds outside the covered ranges.
RigidityCertificate closure(double seed, ClosureContext context, int dim,
                            int max_steps = 10000, double terminal_threshold = 1e-3);

struct ReplayResult {
  bool ok = true;
  std::string message;
};

// Re-checks every step of a certificate: inputs must be available angles,
// side conditions must hold, rule arithmetic must reproduce the output, and
// the verdict must be backed by the derived set.
ReplayResult replay(const RigidityCertificate& cert);

// alpha_1 = pi/4, beta(alpha_n) - alpha_n = alpha_{n-1}; increases to pi/2.
std::vector<double> case2_recursion(int n_max);

// Root of 2pi - beta(alpha) - alpha = 2alpha; lies in (1.28, 1.29).
double solve_alpha_check();

// alpha_1 = 5pi/8, alpha_n = pi - alpha_{n-1}/2; alternates around 2pi/3.
std::vector<double> case5_recursion(int n_max);

// Closed form of the same sequence:
// (-1)^(n-1) alpha_1 / 2^(n-1) + sum_{j=0}^{n-2} (-1)^j pi / 2^j.
double case5_explicit(int n);

struct SpecialConstants {
  double alpha_sqrt5 = 0.0;   // root of 3 beta1 = 2pi - beta2: arccos(1/sqrt 5)
  double alpha_sqrt17 = 0.0;  // root of case4_gamma = pi/2: arccos((1+sqrt 17)/8)
};
SpecialConstants special_constants();

// arccos(|4cos a + 4/(cos a + 1) - 5|) for 0 < alpha < pi/3; sits in
// (alpha, 2 alpha) and hits pi/2 exactly at arccos((1+sqrt 17)/8).
double case4_gamma(double alpha);

// Order type of (2b1, 2pi-b1-b2, b2-b1, 2pi-2b2) for pi/3 < alpha < pi/2.
// Ties at 1e-10 collapse to the double-equality ordering O1.
enum class BetaOrdering { O1, O2, O3, O4, O5, O6 };
BetaOrdering ordering_classify(double alpha, int dim);
std::string ordering_name(BetaOrdering o);

// Sphere angle the ordering argument isolates: 2b1 or 2pi-b1-b2.
double ordering_derived_angle(double alpha, int dim);

struct BetaMonotonicityReport {
  bool slope_positive = true;       // finite differences of beta(a) - a
  bool derivative_above_one = true; // central differences of beta
  bool beta_below_double = true;    // beta(a) - a < a on the open interval
  double min_derivative = 0.0;
  double max_beta_minus_2a = 0.0;
  double beta_at_0 = 0.0;           // closed form gives 0
  double beta_at_pi2 = 0.0;         // closed form gives pi
  bool ok() const { return slope_positive && derivative_above_one && beta_below_double; }
};
BetaMonotonicityReport verify_beta_monotonicity(int grid_n);

}  // namespace angleforge
