#include "blackwell/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <sstream>

#include "blackwell/errors.hpp"
#include "blackwell/lp.hpp"

namespace blackwell::geom {

namespace {

void check_same_dim(const Point& a, const Point& b, const char* op) {
  if (a.size() != b.size()) {
    throw ValidationError(std::string(op) + ": dimension mismatch " +
                          std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
}

}  // namespace

double dot(const Point& a, const Point& b) {
  check_same_dim(a, b, "dot");
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Point& a) { return std::sqrt(dot(a, a)); }

double dist(const Point& a, const Point& b) {
  check_same_dim(a, b, "dist");
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

Point add(const Point& a, const Point& b) {
  check_same_dim(a, b, "add");
  Point r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Point sub(const Point& a, const Point& b) {
  check_same_dim(a, b, "sub");
  Point r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Point scale(const Point& a, double s) {
  Point r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
  return r;
}

Point normalized(const Point& a, double tol) {
  double n = norm(a);
  if (n <= tol) throw DegenerateDirectionError("normalized: vector norm below tolerance");
  return scale(a, 1.0 / n);
}

bool lex_less(const Point& a, const Point& b, double tol) {
  check_same_dim(a, b, "lex_less");
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i] - tol) return true;
    if (a[i] > b[i] + tol) return false;
  }
  return false;
}

bool Halfspace::contains(const Point& z, double tol) const {
  return dot(normal, z) <= offset + tol;
}

// ---- TargetSet construction -------------------------------------------------

namespace {

int rep_dimension(const TargetSet::Rep& rep);

void validate(const Ball& b) {
  if (b.center.empty()) throw ValidationError("ball: empty center");
  if (b.radius < 0.0) throw ValidationError("ball: negative radius");
}
void validate(const Segment& s) {
  if (s.a.empty()) throw ValidationError("segment: empty endpoint");
  check_same_dim(s.a, s.b, "segment");
}
void validate(const HullOfPoints& h) {
  if (h.vertices.empty()) throw EmptySetError("hull: no vertices");
  for (const auto& v : h.vertices) check_same_dim(h.vertices.front(), v, "hull");
}
void validate(const PointCloud& c) {
  if (c.points.empty()) throw EmptySetError("cloud: no points");
  if (c.h <= 0.0) throw ValidationError("cloud: non-positive resolution");
  for (const auto& p : c.points) check_same_dim(c.points.front(), p, "cloud");
}
void validate(const UnionSet& u) {
  if (u.members.empty()) throw EmptySetError("union: no members");
  int d = u.members.front().dimension();
  for (const auto& m : u.members) {
    if (m.dimension() != d) throw ValidationError("union: member dimension mismatch");
  }
}

int rep_dimension(const TargetSet::Rep& rep) {
  return std::visit(
      [](const auto& v) -> int {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Ball>) return static_cast<int>(v.center.size());
        else if constexpr (std::is_same_v<T, Segment>) return static_cast<int>(v.a.size());
        else if constexpr (std::is_same_v<T, HullOfPoints>) return static_cast<int>(v.vertices.front().size());
        else if constexpr (std::is_same_v<T, PointCloud>) return static_cast<int>(v.points.front().size());
        else return v.members.front().dimension();
      },
      rep);
}

}  // namespace

TargetSet::TargetSet(Ball v) { validate(v); rep_ = std::make_shared<const Rep>(std::move(v)); }
TargetSet::TargetSet(Segment v) { validate(v); rep_ = std::make_shared<const Rep>(std::move(v)); }
TargetSet::TargetSet(HullOfPoints v) { validate(v); rep_ = std::make_shared<const Rep>(std::move(v)); }
TargetSet::TargetSet(PointCloud v) { validate(v); rep_ = std::make_shared<const Rep>(std::move(v)); }
TargetSet::TargetSet(UnionSet v) { validate(v); rep_ = std::make_shared<const Rep>(std::move(v)); }

int TargetSet::dimension() const { return rep_dimension(*rep_); }

double TargetSet::resolution() const {
  return std::visit(
      [](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, PointCloud>) return v.h;
        else if constexpr (std::is_same_v<T, UnionSet>) {
          double h = 0.0;
          for (const auto& m : v.members) h = std::max(h, m.resolution());
          return h;
        } else return 0.0;
      },
      *rep_);
}

bool TargetSet::is_convex() const {
  return std::visit(
      [](const auto& v) -> bool {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, PointCloud>) return v.points.size() <= 1;
        else if constexpr (std::is_same_v<T, UnionSet>)
          return v.members.size() == 1 && v.members.front().is_convex();
        else return true;
      },
      *rep_);
}

std::string TargetSet::describe() const {
  std::ostringstream os;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Ball>) os << "ball(r=" << v.radius << ")";
        else if constexpr (std::is_same_v<T, Segment>) os << "segment";
        else if constexpr (std::is_same_v<T, HullOfPoints>) os << "hull(" << v.vertices.size() << ")";
        else if constexpr (std::is_same_v<T, PointCloud>) os << "cloud(" << v.points.size() << ",h=" << v.h << ")";
        else os << "union(" << v.members.size() << ")";
      },
      *rep_);
  return os.str();
}

// ---- Projection -------------------------------------------------------------

namespace {

constexpr double kTieTol = 1e-12;

NearestPointResult project_ball(const Point& phi, const Ball& b) {
  double d = dist(phi, b.center);
  if (d <= b.radius) return {phi, 0.0};
  Point dir = scale(sub(phi, b.center), 1.0 / d);
  return {add(b.center, scale(dir, b.radius)), d - b.radius};
}

NearestPointResult project_segment(const Point& phi, const Segment& s) {
  Point ab = sub(s.b, s.a);
  double len2 = dot(ab, ab);
  double t = len2 <= 0.0 ? 0.0 : std::clamp(dot(sub(phi, s.a), ab) / len2, 0.0, 1.0);
  Point p = add(s.a, scale(ab, t));
  return {p, dist(phi, p)};
}

// Solves the k x k system M t = rhs by Gaussian elimination with partial
// pivoting; returns false when M is numerically singular.
bool solve_small(std::vector<std::vector<double>> M, std::vector<double> rhs, std::vector<double>& t) {
  const size_t k = rhs.size();
  for (size_t col = 0; col < k; ++col) {
    size_t piv = col;
    for (size_t r = col + 1; r < k; ++r)
      if (std::abs(M[r][col]) > std::abs(M[piv][col])) piv = r;
    if (std::abs(M[piv][col]) < 1e-12) return false;
    std::swap(M[piv], M[col]);
    std::swap(rhs[piv], rhs[col]);
    for (size_t r = 0; r < k; ++r) {
      if (r == col) continue;
      double f = M[r][col] / M[col][col];
      for (size_t c = col; c < k; ++c) M[r][c] -= f * M[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  t.resize(k);
  for (size_t i = 0; i < k; ++i) t[i] = rhs[i] / M[i][i];
  return true;
}

// Exact hull projection: the nearest point lies in the relative interior of a
// face spanned by an affinely independent vertex subset of size <= d+1, where
// it equals the unconstrained projection onto that subset's affine hull.
NearestPointResult project_hull(const Point& phi, const HullOfPoints& hull) {
  const auto& V = hull.vertices;
  const int d = static_cast<int>(phi.size());
  const int n = static_cast<int>(V.size());
  NearestPointResult best{V[0], dist(phi, V[0])};
  auto consider = [&](const Point& cand) {
    double dd = dist(phi, cand);
    if (dd < best.distance - kTieTol ||
        (dd <= best.distance + kTieTol && lex_less(cand, best.point, 0.0))) {
      best = {cand, dd};
    }
  };
  for (int p = 1; p < n; ++p) consider(V[p]);

  const int kmax = std::min(n, d + 1);
  std::vector<int> idx;
  // Enumerates subsets of each size 2..kmax in lexicographic index order.
  for (int k = 2; k <= kmax; ++k) {
    idx.assign(k, 0);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      const Point& v0 = V[idx[0]];
      Point rhs_vec = sub(phi, v0);
      std::vector<Point> B;
      B.reserve(k - 1);
      for (int i = 1; i < k; ++i) B.push_back(sub(V[idx[i]], v0));
      std::vector<std::vector<double>> M(k - 1, std::vector<double>(k - 1));
      std::vector<double> rhs(k - 1);
      for (int r = 0; r < k - 1; ++r) {
        for (int c = 0; c < k - 1; ++c) M[r][c] = dot(B[r], B[c]);
        rhs[r] = dot(B[r], rhs_vec);
      }
      std::vector<double> t;
      if (solve_small(std::move(M), std::move(rhs), t)) {
        double t0 = 1.0;
        bool feasible = true;
        for (double ti : t) {
          t0 -= ti;
          if (ti < -kTieTol) { feasible = false; break; }
        }
        if (feasible && t0 >= -kTieTol) {
          Point cand = v0;
          for (int i = 0; i < k - 1; ++i)
            for (int c = 0; c < d; ++c) cand[c] += t[i] * B[i][c];
          consider(cand);
        }
      }
      // next combination
      int pos = k - 1;
      while (pos >= 0 && idx[pos] == n - k + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
  return best;
}

NearestPointResult project_cloud(const Point& phi, const PointCloud& c) {
  NearestPointResult best{c.points[0], dist(phi, c.points[0])};
  for (size_t i = 1; i < c.points.size(); ++i) {
    double dd = dist(phi, c.points[i]);
    if (dd < best.distance - kTieTol ||
        (dd <= best.distance + kTieTol && lex_less(c.points[i], best.point, 0.0))) {
      best = {c.points[i], dd};
    }
  }
  return best;
}

}  // namespace

NearestPointResult project(const Point& phi, const TargetSet& S) {
  if (static_cast<int>(phi.size()) != S.dimension())
    throw ValidationError("project: dimension mismatch");
  return std::visit(
      [&](const auto& v) -> NearestPointResult {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Ball>) return project_ball(phi, v);
        else if constexpr (std::is_same_v<T, Segment>) return project_segment(phi, v);
        else if constexpr (std::is_same_v<T, HullOfPoints>) return project_hull(phi, v);
        else if constexpr (std::is_same_v<T, PointCloud>) return project_cloud(phi, v);
        else {
          NearestPointResult best = project(phi, v.members.front());
          for (size_t i = 1; i < v.members.size(); ++i) {
            NearestPointResult r = project(phi, v.members[i]);
            if (r.distance < best.distance - kTieTol ||
                (r.distance <= best.distance + kTieTol && lex_less(r.point, best.point, 0.0))) {
              best = r;
            }
          }
          return best;
        }
      },
      S.rep());
}

double support_function(const TargetSet& S, const Point& lambda) {
  return std::visit(
      [&](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Ball>) return dot(v.center, lambda) + v.radius * norm(lambda);
        else if constexpr (std::is_same_v<T, Segment>) return std::max(dot(v.a, lambda), dot(v.b, lambda));
        else if constexpr (std::is_same_v<T, HullOfPoints>) {
          double s = -std::numeric_limits<double>::infinity();
          for (const auto& p : v.vertices) s = std::max(s, dot(p, lambda));
          return s;
        } else if constexpr (std::is_same_v<T, PointCloud>) {
          double s = -std::numeric_limits<double>::infinity();
          for (const auto& p : v.points) s = std::max(s, dot(p, lambda));
          return s;
        } else {
          double s = -std::numeric_limits<double>::infinity();
          for (const auto& m : v.members) s = std::max(s, support_function(m, lambda));
          return s;
        }
      },
      S.rep());
}

// ---- Sampling ---------------------------------------------------------------

namespace {

void dedupe(std::vector<Point>& pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Point& a, const Point& b) {
                          for (size_t i = 0; i < a.size(); ++i)
                            if (std::abs(a[i] - b[i]) > kTieTol) return false;
                          return true;
                        }),
            pts.end());
}

std::vector<Point> sample_segment(const Segment& s, double h) {
  double len = dist(s.a, s.b);
  long long n = std::max<long long>(1, static_cast<long long>(std::ceil(len / h)));
  if (len == 0.0) return {s.a};
  std::vector<Point> pts;
  pts.reserve(n + 1);
  Point ab = sub(s.b, s.a);
  for (long long k = 0; k <= n; ++k)
    pts.push_back(add(s.a, scale(ab, static_cast<double>(k) / static_cast<double>(n))));
  return pts;
}

// Axis-aligned grid over [lo, hi] with step h, aligned so `anchor` is a node.
std::vector<Point> grid_filter(const Point& lo, const Point& hi, const Point& anchor, double h,
                               const std::function<bool(const Point&)>& keep) {
  const int d = static_cast<int>(lo.size());
  std::vector<long long> kmin(d), kmax(d);
  long long total = 1;
  for (int i = 0; i < d; ++i) {
    kmin[i] = static_cast<long long>(std::ceil((lo[i] - anchor[i]) / h - 1e-12));
    kmax[i] = static_cast<long long>(std::floor((hi[i] - anchor[i]) / h + 1e-12));
    if (kmax[i] < kmin[i]) return {};
    total *= (kmax[i] - kmin[i] + 1);
    if (total > 40'000'000) throw ValidationError("sample_cloud: grid too large at this resolution");
  }
  std::vector<Point> pts;
  std::vector<long long> k(kmin);
  Point p(d);
  while (true) {
    for (int i = 0; i < d; ++i) p[i] = anchor[i] + h * static_cast<double>(k[i]);
    if (keep(p)) pts.push_back(p);
    int pos = d - 1;
    while (pos >= 0 && k[pos] == kmax[pos]) { k[pos] = kmin[pos]; --pos; }
    if (pos < 0) break;
    ++k[pos];
  }
  return pts;
}

std::vector<Point> sample_rep(const TargetSet& S, double h);

std::vector<Point> sample_points(const TargetSet::Rep& rep, const TargetSet& S, double h) {
  return std::visit(
      [&](const auto& v) -> std::vector<Point> {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Ball>) {
          Point lo = v.center, hi = v.center;
          for (auto& x : lo) x -= v.radius;
          for (auto& x : hi) x += v.radius;
          return grid_filter(lo, hi, v.center, h,
                             [&](const Point& p) { return dist(p, v.center) <= v.radius + 1e-12; });
        } else if constexpr (std::is_same_v<T, Segment>) {
          return sample_segment(v, h);
        } else if constexpr (std::is_same_v<T, HullOfPoints>) {
          Point lo = v.vertices.front(), hi = v.vertices.front();
          for (const auto& p : v.vertices)
            for (size_t i = 0; i < p.size(); ++i) {
              lo[i] = std::min(lo[i], p[i]);
              hi[i] = std::max(hi[i], p[i]);
            }
          std::vector<Point> pts = grid_filter(lo, hi, v.vertices.front(), h,
                                               [&](const Point& p) { return project(p, S).distance <= 1e-9; });
          for (const auto& vert : v.vertices) pts.push_back(vert);
          return pts;
        } else if constexpr (std::is_same_v<T, PointCloud>) {
          return v.points;
        } else {
          std::vector<Point> pts;
          for (const auto& m : v.members) {
            auto sub_pts = sample_rep(m, h);
            pts.insert(pts.end(), sub_pts.begin(), sub_pts.end());
          }
          return pts;
        }
      },
      rep);
}

std::vector<Point> sample_rep(const TargetSet& S, double h) {
  return sample_points(S.rep(), S, h);
}

}  // namespace

PointCloud sample_cloud(const TargetSet& S, double h) {
  if (h <= 0.0) throw NonPositiveInputError("sample_cloud: resolution must be positive");
  std::vector<Point> pts = sample_rep(S, h);
  dedupe(pts);
  if (pts.empty()) throw EmptySetError("sample_cloud: empty sample");
  return PointCloud{std::move(pts), h};
}

double hausdorff(const TargetSet& A, const TargetSet& B, double h) {
  auto pts = [&](const TargetSet& S) -> std::vector<Point> {
    if (const auto* c = std::get_if<PointCloud>(&S.rep())) return c->points;
    return sample_cloud(S, h).points;
  };
  std::vector<Point> pa = pts(A), pb = pts(B);
  auto one_sided = [](const std::vector<Point>& xs, const std::vector<Point>& ys) {
    double worst = 0.0;
    for (const auto& x : xs) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& y : ys) best = std::min(best, dist(x, y));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_sided(pa, pb), one_sided(pb, pa));
}

// ---- Direction grids --------------------------------------------------------

DirectionGrid make_direction_grid(int d, const std::vector<Point>& generators, int count) {
  if (d < 1) throw ValidationError("make_direction_grid: dimension must be >= 1");
  DirectionGrid g;
  if (d == 1) {
    g.dirs = {{1.0}, {-1.0}};
    g.gap = 0.0;
    return g;
  }
  if (d == 2) {
    int K = count > 0 ? count : 720;
    g.dirs.reserve(K);
    for (int k = 0; k < K; ++k) {
      double th = 2.0 * M_PI * k / K;
      g.dirs.push_back({std::cos(th), std::sin(th)});
    }
    g.gap = M_PI / K;  // chord <= half the angular spacing
    return g;
  }
  if (d == 3) {
    int M = count > 0 ? count : 2000;
    double ga = M_PI * (3.0 - std::sqrt(5.0));
    g.dirs.reserve(M);
    for (int i = 0; i < M; ++i) {
      double z = 1.0 - (2.0 * i + 1.0) / M;
      double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      g.dirs.push_back({r * std::cos(ga * i), r * std::sin(ga * i), z});
    }
    // Measured covering chord for M=2000 is 0.061; frozen with safety margin
    // and scaled by the usual sqrt law for other counts.
    g.gap = 0.072 * std::sqrt(2000.0 / M);
    return g;
  }
  std::vector<Point> dirs;
  for (size_t i = 0; i < generators.size(); ++i)
    for (size_t j = 0; j < generators.size(); ++j) {
      if (i == j) continue;
      Point diff = sub(generators[i], generators[j]);
      if (norm(diff) > 1e-9) dirs.push_back(normalized(diff));
    }
  for (int i = 0; i < d; ++i) {
    Point e(d, 0.0);
    e[i] = 1.0;
    dirs.push_back(e);
    e[i] = -1.0;
    dirs.push_back(e);
  }
  dedupe(dirs);
  g.dirs = std::move(dirs);
  g.gap = 1.0;  // heuristic grid: no covering guarantee in d > 3
  return g;
}

double bounding_radius(const TargetSet& S) {
  return std::visit(
      [&](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Ball>) return norm(v.center) + v.radius;
        else if constexpr (std::is_same_v<T, Segment>) return std::max(norm(v.a), norm(v.b));
        else if constexpr (std::is_same_v<T, HullOfPoints>) {
          double r = 0.0;
          for (const auto& p : v.vertices) r = std::max(r, norm(p));
          return r;
        } else if constexpr (std::is_same_v<T, PointCloud>) {
          double r = 0.0;
          for (const auto& p : v.points) r = std::max(r, norm(p));
          return r;
        } else {
          double r = 0.0;
          for (const auto& m : v.members) r = std::max(r, bounding_radius(m));
          return r;
        }
      },
      S.rep());
}

bool membership_via_support(const Point& phi, const TargetSet& S, const DirectionGrid& grid) {
  if (!S.is_convex())
    throw NonConvexSetError("membership_via_support: support test requires a convex set");
  double band = grid.gap * (norm(phi) + bounding_radius(S)) + 1e-9;
  for (const auto& lam : grid.dirs) {
    if (dot(phi, lam) - support_function(S, lam) > band) return false;
  }
  return true;
}

bool in_convex_hull(const Point& phi, const std::vector<Point>& generators) {
  if (generators.empty()) throw EmptySetError("in_convex_hull: no generators");
  const int d = static_cast<int>(phi.size());
  const int n = static_cast<int>(generators.size());
  for (const auto& g : generators) check_same_dim(phi, g, "in_convex_hull");
  // min sum(u + w)  s.t.  V a + u - w = phi, sum(a) = 1, a,u,w >= 0.
  // phi lies in the hull iff the optimum is ~0 (L1 infeasibility relaxation).
  lp::LinearProgram prog;
  prog.direction = lp::Direction::Minimize;
  const int nvars = n + 2 * d;
  prog.objective.assign(nvars, 0.0);
  for (int i = 0; i < 2 * d; ++i) prog.objective[n + i] = 1.0;
  prog.A.assign(d + 1, std::vector<double>(nvars, 0.0));
  prog.rhs.assign(d + 1, 0.0);
  prog.senses.assign(d + 1, lp::Sense::Eq);
  for (int r = 0; r < d; ++r) {
    for (int j = 0; j < n; ++j) prog.A[r][j] = generators[j][r];
    prog.A[r][n + r] = 1.0;       // u_r
    prog.A[r][n + d + r] = -1.0;  // w_r
    prog.rhs[r] = phi[r];
  }
  for (int j = 0; j < n; ++j) prog.A[d][j] = 1.0;
  prog.rhs[d] = 1.0;
  lp::LPResult res = lp::solve_lp(prog);
  return res.status == lp::LPStatus::Optimal && res.value <= 1e-7;
}

Point accumulate_mean(const Point& mean, const Point& z, long long t) {
  check_same_dim(mean, z, "accumulate_mean");
  Point r(mean.size());
  double inv = 1.0 / static_cast<double>(t + 1);
  for (size_t i = 0; i < mean.size(); ++i) r[i] = mean[i] + (z[i] - mean[i]) * inv;
  return r;
}

}  // namespace blackwell::geom
