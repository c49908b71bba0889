#pragma once

#include "angleforge/angle_sets.hpp"
#include "angleforge/core.hpp"

#include <cstdint>
#include <functional>

namespace angleforge {

struct GridSpec {
  int resolution = 400;       // points per parameter, >= 16
  std::uint64_t seed = 0;
  double tolerance = 0.01;    // radians; boundary exclusion zone is 2*tolerance

  void validate() const {
    if (resolution < 16) throw std::invalid_argument("GridSpec: resolution < 16");
    if (!(tolerance > 0)) throw std::invalid_argument("GridSpec: tolerance <= 0");
  }
};

struct OracleReport {
  Cardinality estimate;
  double value = 0.0;         // diameter / root estimates
  long samples_used = 0;
  double max_residual = 0.0;  // marking band / membership residual used
  double tolerance = 0.0;     // copied from the spec it was computed with
  bool boundary = false;      // input within 2*tolerance of a case boundary
  bool coarse = false;        // clusters not separable at this resolution
};

// Monotone-bracket root finder; |root bracket| <= tol on return.
template <typename F>
double bisect(F&& f, double lo, double hi, double tol = 1e-13, int max_iter = 200) {
  if (!(lo < hi)) throw std::invalid_argument("bisect: bad bracket");
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) throw std::invalid_argument("bisect: no sign change");
  for (int i = 0; i < max_iter && (hi - lo) > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  return 0.5 * (lo + hi);
}

// Brute-force classification of card(x^(alpha) ∩ y^(beta)) on the 2-sphere
// (dim 3) via a (theta,phi) grid with union-find clustering of marked cells.
OracleReport mc_sphere_card(const RealVec& x, const RealVec& y, double alpha,
                            double beta, const GridSpec& spec);

// Same through the angles only: places x,y at sphere angle gamma.
OracleReport mc_sphere_card(double alpha, double beta, double gamma,
                            const GridSpec& spec);

// Brute-force classification of card([v]^alpha ∩ [w]^beta) in dim 3 over the
// (lambda,delta) parameter grid of the level-set parametrization, mu handled
// as the per-solution multiplicity (a sign for real scalars, a circle for
// complex ones).
OracleReport mc_proj_card(const RealLine& v, const RealLine& w, double alpha,
                          double beta, const GridSpec& spec);
OracleReport mc_proj_card(const ComplexLine& v, const ComplexLine& w, double alpha,
                          double beta, const GridSpec& spec);
OracleReport mc_proj_card(double alpha, double beta, double gamma, Field field,
                          const GridSpec& spec);

// Sampled diameter (max pairwise angle) of a materialized intersection set;
// a lower bound within O(resolution^-1) for these smooth sets.
OracleReport mc_diam(const SphereCapIntersection& set, const GridSpec& spec);
OracleReport mc_diam(const ProjCapIntersection& set, const GridSpec& spec);

// Chunked parallel loop; worker count from ANGLEFORGE_THREADS (default 1).
// Results must be written to disjoint slots so the merge is order-free.
void parallel_for(long n, const std::function<void(long, long)>& body);
int configured_threads();

}  // namespace angleforge
