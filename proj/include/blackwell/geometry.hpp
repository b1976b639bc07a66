#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace blackwell::geom {

// Points are dense coordinate vectors; dimension is implicit in size().
using Point = std::vector<double>;

double dot(const Point& a, const Point& b);
double norm(const Point& a);
double dist(const Point& a, const Point& b);
Point add(const Point& a, const Point& b);
Point sub(const Point& a, const Point& b);
Point scale(const Point& a, double s);
// Normalizes in place; throws DegenerateDirectionError below tol.
Point normalized(const Point& a, double tol = 1e-12);
// Lexicographic comparison with per-coordinate tolerance; used for tie-breaks.
bool lex_less(const Point& a, const Point& b, double tol = 0.0);

// Closed halfspace {z : <normal, z> <= offset}. normal need not be unit.
struct Halfspace {
  Point normal;
  double offset = 0.0;
  bool contains(const Point& z, double tol = 0.0) const;
};

// Target set representations. All are compact; unbounded targets must be
// clipped to the payoff hull's bounding ball before construction.
struct Ball {
  Point center;
  double radius = 0.0;  // closed solid ball
};
struct Segment {
  Point a, b;  // closed segment [a, b]
};
struct HullOfPoints {
  std::vector<Point> vertices;  // convex hull of a finite generator list
};
struct PointCloud {
  std::vector<Point> points;
  double h = 0.01;  // sampling resolution the cloud was built at
};
class TargetSet;
struct UnionSet {
  std::vector<TargetSet> members;  // finite union, possibly non-convex
};

class TargetSet {
 public:
  using Rep = std::variant<Ball, Segment, HullOfPoints, PointCloud, UnionSet>;
  TargetSet(Ball v);
  TargetSet(Segment v);
  TargetSet(HullOfPoints v);
  TargetSet(PointCloud v);
  TargetSet(UnionSet v);
  const Rep& rep() const { return *rep_; }
  int dimension() const;
  // Sampling resolution: h for clouds, max over union members, 0 otherwise.
  double resolution() const;
  bool is_convex() const;  // unions are reported non-convex conservatively
  std::string describe() const;

 private:
  std::shared_ptr<const Rep> rep_;
};

struct NearestPointResult {
  Point point;       // nearest point of S (lexicographic tie-break)
  double distance;   // = dist(phi, point)
};

// Exact nearest point for every representation. Hull projection enumerates
// affinely independent vertex subsets (exact for desk-scale generator counts).
NearestPointResult project(const Point& phi, const TargetSet& S);

// Support function sup_{z in S} <lambda, z>.
double support_function(const TargetSet& S, const Point& lambda);

// Hausdorff distance; non-cloud inputs are sampled at resolution h first.
double hausdorff(const TargetSet& A, const TargetSet& B, double h = 0.01);

// Finite direction grid with a documented covering bound `gap`:
// every unit direction is within chord distance `gap` of some grid member.
struct DirectionGrid {
  std::vector<Point> dirs;
  double gap = 0.0;
};
// d=1: {+1,-1}; d=2: K equally spaced angles (default 720);
// d=3: Fibonacci sphere (default 2000); d>3: normalized generator
// differences plus coordinate axes (heuristic, gap set to 1).
DirectionGrid make_direction_grid(int d, const std::vector<Point>& generators = {}, int count = 0);

// True iff max over grid of <phi,lambda> - support(S,lambda) <= band where
// band = gap * (|phi| + R_S) + 1e-9. Exact for members; may accept points
// within the band outside S (documented approximation).
bool membership_via_support(const Point& phi, const TargetSet& S, const DirectionGrid& grid);

// Exact membership in conv(generators) via a small feasibility LP.
bool in_convex_hull(const Point& phi, const std::vector<Point>& generators);

// Epsilon-net of S at resolution h (grid-based; includes segment endpoints).
PointCloud sample_cloud(const TargetSet& S, double h);

// Max |z| over a natural finite sample of S (vertices / centers + radius).
double bounding_radius(const TargetSet& S);

// Running-mean update shared by every trajectory accumulator:
// mean_{t+1} = (t * mean_t + z) / (t + 1), t = number of samples so far.
Point accumulate_mean(const Point& mean, const Point& z, long long t);

}  // namespace blackwell::geom
