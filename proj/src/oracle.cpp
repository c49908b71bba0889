#include "angleforge/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <thread>

namespace angleforge {

int configured_threads() {
  const char* env = std::getenv("ANGLEFORGE_THREADS");
  if (!env) return 1;
  const int n = std::atoi(env);
  if (n < 1) return 1;
  return std::min(n, 64);
}

void parallel_for(long n, const std::function<void(long, long)>& body) {
  const int workers = configured_threads();
  if (workers <= 1 || n < 1024) {
    body(0, n);
    return;
  }
  std::vector<std::thread> pool;
  const long chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const long lo = w * chunk;
    const long hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back(body, lo, hi);
  }
  for (auto& t : pool) t.join();
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

struct Cell {
  int row, col;
  double residual;
};

struct Cluster {
  std::vector<int> members;     // indices into the cell list
  double extent = 0.0;          // max pairwise angle among member points
  double col_coverage = 0.0;    // fraction of the periodic column range touched
};

// Groups marked cells by grid adjacency (cols periodic) gated by the actual
// point metric, then measures each cluster.
std::vector<Cluster> cluster_cells(const std::vector<Cell>& cells, int n_cols,
                                   double merge_radius,
                                   const std::function<double(int, int)>& distance) {
  const int n = static_cast<int>(cells.size());
  UnionFind uf(n);
  // cells are few; quadratic adjacency over index windows is fine
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const int dr = std::abs(cells[a].row - cells[b].row);
      int dc = std::abs(cells[a].col - cells[b].col);
      dc = std::min(dc, n_cols - dc);
      if (dr <= 2 && dc <= 2 && distance(a, b) <= merge_radius) uf.unite(a, b);
    }
  }
  std::vector<Cluster> out;
  std::vector<int> root_of(n, -1);
  for (int a = 0; a < n; ++a) {
    const int r = uf.find(a);
    if (root_of[r] < 0) {
      root_of[r] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[root_of[r]].members.push_back(a);
  }
  for (auto& cl : out) {
    std::vector<int> sample = cl.members;
    if (sample.size() > 160) {  // extent estimate from a spread subsample
      std::vector<int> thin;
      const std::size_t stride = sample.size() / 160 + 1;
      for (std::size_t i = 0; i < sample.size(); i += stride) thin.push_back(sample[i]);
      sample.swap(thin);
    }
    for (std::size_t i = 0; i < sample.size(); ++i)
      for (std::size_t j = i + 1; j < sample.size(); ++j)
        cl.extent = std::max(cl.extent, distance(sample[i], sample[j]));
    std::vector<char> seen(n_cols, 0);
    for (int m : cl.members) seen[cells[m].col] = 1;
    cl.col_coverage =
        static_cast<double>(std::count(seen.begin(), seen.end(), 1)) / n_cols;
  }
  return out;
}

double min_cluster_separation(const std::vector<Cluster>& clusters,
                              const std::vector<Cell>& cells,
                              const std::function<double(int, int)>& distance) {
  double best = 1e9;
  for (std::size_t a = 0; a < clusters.size(); ++a) {
    for (std::size_t b = a + 1; b < clusters.size(); ++b) {
      for (int i : clusters[a].members) {
        for (int j : clusters[b].members) {
          best = std::min(best, distance(i, j));
          if (best < 1e-9) return best;
        }
      }
    }
  }
  return best;
}

double boundary_distance_sphere(double alpha, double beta, double gamma) {
  const double sum = alpha + beta;
  const double upper = sum < kPi ? sum : 2.0 * kPi - sum;
  double d = std::abs(gamma - (beta - alpha));
  d = std::min(d, std::abs(gamma - upper));
  // coincident circles live at the corner gamma = pi, alpha + beta = pi
  d = std::min(d, std::max(std::abs(gamma - kPi), std::abs(sum - kPi)));
  // joint-orthocomplement clause
  d = std::min(d, std::max(std::abs(alpha - kPi / 2), std::abs(beta - kPi / 2)));
  return d;
}

double boundary_distance_proj(double alpha, double beta, double gamma) {
  double d = std::abs(gamma - (beta - alpha));
  d = std::min(d, std::abs(gamma - (alpha + beta)));
  d = std::min(d, std::abs(gamma - (kPi - alpha - beta)));  // real count step
  d = std::min(d, std::abs(alpha + beta - kPi / 2));
  d = std::min(d, kPi / 2 - std::max(alpha, beta));         // pi/2 level degeneracy
  return d;
}

}  // namespace

OracleReport mc_sphere_card(double alpha, double beta, double gamma,
                            const GridSpec& spec) {
  RealVec x(3), y(3);
  x << 0, 0, 1;
  y << std::sin(gamma), 0, std::cos(gamma);
  return mc_sphere_card(x, y, alpha, beta, spec);
}

OracleReport mc_sphere_card(const RealVec& x, const RealVec& y, double alpha,
                            double beta, const GridSpec& spec) {
  spec.validate();
  if (x.size() != 3 || y.size() != 3)
    throw std::invalid_argument("mc_sphere_card: dim 3 only");
  const RealVec xs = x / x.norm();
  RealVec p = y / y.norm() - inner(RealVec(y / y.norm()), xs) * xs;
  if (p.norm() < 1e-9) {  // x,y on one axis: any equatorial direction works
    p = RealVec(3);
    p << xs[1] - xs[2], xs[2] - xs[0], xs[0] - xs[1];
    if (p.norm() < 1e-9) {
      p << 1, 1, 0;
      p -= inner(p, xs) * xs;
    }
  }
  p /= p.norm();
  RealVec q(3);
  q << xs[1] * p[2] - xs[2] * p[1], xs[2] * p[0] - xs[0] * p[2],
      xs[0] * p[1] - xs[1] * p[0];
  const RealVec ys = y / y.norm();

  const int res = spec.resolution;
  const int n_cols = 2 * res;
  const double band = 2.0 * kPi / res;

  // rows are exact x-angle levels, so only rows near alpha can hold solutions
  std::vector<Cell> cells;
  std::vector<int> rows;
  for (int i = 0; i < res; ++i) {
    const double theta = (i + 0.5) * kPi / res;
    if (std::abs(theta - alpha) <= band) rows.push_back(i);
  }
  std::vector<std::vector<char>> marked(rows.size(), std::vector<char>(n_cols, 0));
  parallel_for(static_cast<long>(rows.size()) * n_cols, [&](long lo, long hi) {
    for (long idx = lo; idx < hi; ++idx) {
      const int r = static_cast<int>(idx / n_cols);
      const int j = static_cast<int>(idx % n_cols);
      const double theta = (rows[r] + 0.5) * kPi / res;
      const double phi = 2.0 * kPi * j / n_cols;
      const RealVec u = std::cos(theta) * xs +
                        std::sin(theta) * (std::cos(phi) * p + std::sin(phi) * q);
      const double r_y = std::abs(sphere_angle(u, ys) - beta);
      const double r_x = std::abs(theta - alpha);
      if (std::max(r_x, r_y) <= band) marked[r][j] = 1;
    }
  });
  std::vector<RealVec> points;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (int j = 0; j < n_cols; ++j) {
      if (!marked[r][j]) continue;
      const double theta = (rows[r] + 0.5) * kPi / res;
      const double phi = 2.0 * kPi * j / n_cols;
      cells.push_back({rows[r], j, 0.0});
      points.push_back(std::cos(theta) * xs +
                       std::sin(theta) * (std::cos(phi) * p + std::sin(phi) * q));
    }
  }

  OracleReport report;
  report.tolerance = spec.tolerance;
  report.max_residual = band;
  report.samples_used = static_cast<long>(rows.size()) * n_cols;
  report.boundary =
      boundary_distance_sphere(alpha, beta, sphere_angle(xs, ys)) <= 2.0 * spec.tolerance;
  if (cells.empty()) {
    report.estimate = Cardinality::empty();
    return report;
  }
  auto dist = std::function<double(int, int)>(
      [&points](int a, int b) { return sphere_angle(points[a], points[b]); });
  auto clusters = cluster_cells(cells, n_cols, 3.0 * band, dist);
  const double curve_extent = std::max(0.3, 3.5 * std::sqrt(kPi / res));
  int point_like = 0;
  bool curve = false;
  for (const auto& cl : clusters) {
    if (cl.col_coverage > 0.85 || cl.extent > curve_extent)
      curve = true;
    else
      ++point_like;
  }
  if (clusters.size() > 1 &&
      min_cluster_separation(clusters, cells, dist) < 3.0 * band)
    report.coarse = true;
  if (curve)
    report.estimate = Cardinality::infinite();
  else
    report.estimate = point_like == 1 ? Cardinality::one()
                                      : Cardinality::finite(point_like);
  return report;
}

namespace {

// Marked-cell scan shared by the two scalar fields. Lines of the level set
// [v]^alpha are cos(a) e1 + lam sin(a) cos(d) e2 + mu sin(a) sin(d) e3 with
// |lam| = |mu| = 1; membership in [w]^beta constrains (lam,delta) only.
template <typename S>
OracleReport proj_card_scan(const Line<S>& v, const Line<S>& w, double alpha,
                            double beta, const GridSpec& spec) {
  spec.validate();
  if (v.dim() != 3 || w.dim() != 3)
    throw std::invalid_argument("mc_proj_card: dim 3 only");
  constexpr bool complex_field = Eigen::NumTraits<S>::IsComplex;
  const double gamma = line_angle(v, w);
  if (!(gamma > 1e-12)) throw std::invalid_argument("mc_proj_card: coincident lines");

  // frame: e1 along v, e2 completing the v,w plane, e3 the rest
  const Vec<S> e1 = v.rep();
  Vec<S> wr = w.rep();
  const S ip = inner(wr, e1);
  if (abs_of(ip) > 1e-15) wr *= conj_of(S(ip / S(abs_of(ip))));
  Vec<S> e2 = wr - inner(wr, e1) * e1;
  if (e2.norm() < 1e-12) throw std::invalid_argument("mc_proj_card: coincident lines");
  e2 /= e2.norm();
  auto frame = orthonormal_extend<S>({e1, e2}, 3);
  const Vec<S> e3 = frame[2];
  const Line<S> wline(wr);

  const int res = spec.resolution;
  const int n_lam = complex_field ? res : 2;
  const int n_del = res;
  const double band = 2.0 * kPi / res;

  const double sa = std::sin(alpha), ca = std::cos(alpha);
  std::vector<char> marked(static_cast<std::size_t>(n_lam) * n_del, 0);
  parallel_for(static_cast<long>(n_lam) * n_del, [&](long lo, long hi) {
    for (long idx = lo; idx < hi; ++idx) {
      const int li = static_cast<int>(idx / n_del);
      const int di = static_cast<int>(idx % n_del);
      S lam;
      if constexpr (complex_field) {
        const double s = 2.0 * kPi * li / n_lam;
        lam = S(Complex(std::cos(s), std::sin(s)));
      } else {
        lam = li == 0 ? S(1) : S(-1);
      }
      const double delta = (di + 0.5) * (kPi / 2.0) / n_del;
      const Vec<S> u =
          ca * e1 + lam * S(sa * std::cos(delta)) * e2 + S(sa * std::sin(delta)) * e3;
      const double ang = std::acos(clamp_unit(abs_of(inner(u, wline.rep()))));
      if (std::abs(ang - beta) <= band) marked[idx] = 1;
    }
  });

  std::vector<Cell> cells;
  std::vector<Line<S>> lines;
  std::vector<double> deltas;
  for (int li = 0; li < n_lam; ++li) {
    for (int di = 0; di < n_del; ++di) {
      if (!marked[static_cast<std::size_t>(li) * n_del + di]) continue;
      S lam;
      if constexpr (complex_field) {
        const double s = 2.0 * kPi * li / n_lam;
        lam = S(Complex(std::cos(s), std::sin(s)));
      } else {
        lam = li == 0 ? S(1) : S(-1);
      }
      const double delta = (di + 0.5) * (kPi / 2.0) / n_del;
      Vec<S> u =
          ca * e1 + lam * S(sa * std::cos(delta)) * e2 + S(sa * std::sin(delta)) * e3;
      cells.push_back({di, li, 0.0});  // lambda is the periodic axis
      lines.emplace_back(u);
      deltas.push_back(delta);
    }
  }

  OracleReport report;
  report.tolerance = spec.tolerance;
  report.max_residual = band;
  report.samples_used = static_cast<long>(n_lam) * n_del;
  report.boundary =
      boundary_distance_proj(alpha, beta, gamma) <= 2.0 * spec.tolerance;
  if (cells.empty()) {
    report.estimate = Cardinality::empty();
    return report;
  }
  auto dist = std::function<double(int, int)>(
      [&lines](int a, int b) { return line_angle(lines[a], lines[b]); });
  auto clusters = cluster_cells(cells, std::max(n_lam, 4), 3.0 * band, dist);
  const double curve_extent = std::max(0.3, 3.5 * std::sqrt(kPi / res));
  const double delta_point = 2.0 * (kPi / 2.0) / res;

  bool infinite = false;
  int finite_count = 0;
  for (const auto& cl : clusters) {
    const bool wraps = complex_field && cl.col_coverage > 0.85;
    if (wraps || cl.extent > curve_extent) {
      infinite = true;
      continue;
    }
    double mean_delta = 0.0;
    for (int m : cl.members) mean_delta += deltas[m];
    mean_delta /= static_cast<double>(cl.members.size());
    if (mean_delta <= delta_point) {
      finite_count += 1;  // e3 component vanishes: a single line
    } else if (complex_field) {
      infinite = true;    // mu runs over the unit circle
    } else {
      finite_count += 2;  // mu = +-1
    }
  }
  if (clusters.size() > 1 &&
      min_cluster_separation(clusters, cells, dist) < 3.0 * band)
    report.coarse = true;
  report.estimate =
      infinite ? Cardinality::infinite() : Cardinality::finite(finite_count);
  return report;
}

}  // namespace

OracleReport mc_proj_card(const RealLine& v, const RealLine& w, double alpha,
                          double beta, const GridSpec& spec) {
  return proj_card_scan<double>(v, w, alpha, beta, spec);
}

OracleReport mc_proj_card(const ComplexLine& v, const ComplexLine& w, double alpha,
                          double beta, const GridSpec& spec) {
  return proj_card_scan<Complex>(v, w, alpha, beta, spec);
}

OracleReport mc_proj_card(double alpha, double beta, double gamma, Field field,
                          const GridSpec& spec) {
  if (field == Field::Real) {
    RealVec a(3), b(3);
    a << 1, 0, 0;
    b << std::cos(gamma), std::sin(gamma), 0;
    return mc_proj_card(RealLine(a), RealLine(b), alpha, beta, spec);
  }
  ComplexVec a(3), b(3);
  a << 1, 0, 0;
  b << std::cos(gamma), std::sin(gamma), 0;
  return mc_proj_card(ComplexLine(a), ComplexLine(b), alpha, beta, spec);
}

OracleReport mc_diam(const SphereCapIntersection& set, const GridSpec& spec) {
  spec.validate();
  auto samples = set.materialize(spec.resolution);
  OracleReport report;
  report.tolerance = spec.tolerance;
  report.samples_used = static_cast<long>(samples.size());
  report.max_residual = set.membership_residual(samples);
  double best = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i)
    for (std::size_t j = i + 1; j < samples.size(); ++j)
      best = std::max(best, sphere_angle(samples[i], samples[j]));
  report.value = best;
  report.estimate = samples.empty() ? Cardinality::empty() : Cardinality::infinite();
  return report;
}

OracleReport mc_diam(const ProjCapIntersection& set, const GridSpec& spec) {
  spec.validate();
  auto samples = set.materialize(spec.resolution);
  OracleReport report;
  report.tolerance = spec.tolerance;
  report.samples_used = static_cast<long>(samples.size());
  report.max_residual = set.membership_residual(samples);
  double best = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i)
    for (std::size_t j = i + 1; j < samples.size(); ++j)
      best = std::max(best, line_angle(samples[i], samples[j]));
  report.value = best;
  report.estimate = samples.empty() ? Cardinality::empty() : Cardinality::infinite();
  return report;
}

}  // namespace angleforge
