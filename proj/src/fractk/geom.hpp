#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "fractk/common.hpp"

namespace fractk {

struct Point {
  real x = 0, y = 0;

  Point operator+(Point o) const { return {x + o.x, y + o.y}; }
  Point operator-(Point o) const { return {x - o.x, y - o.y}; }
  Point operator*(real s) const { return {x * s, y * s}; }
};

inline real dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline real cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline real norm(Point a) { return std::sqrt(dot(a, a)); }
inline real dist(Point a, Point b) { return norm(a - b); }
// CCW quarter turn.
inline Point perp(Point a) { return {-a.y, a.x}; }
inline Point rotate(Point p, real angle) {
  real c = std::cos(angle), s = std::sin(angle);
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}
inline bool finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

struct Segment {
  Point a, b;
  real length() const { return dist(a, b); }
  Point at(real t) const { return {a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t}; }
};

struct Tolerance {
  real eps = kDefaultEps;
};

struct AxisSquare {
  Point min_corner;
  real side = 0;

  Point center() const { return {min_corner.x + side / 2, min_corner.y + side / 2}; }
  std::vector<Point> corners() const;
  std::vector<Segment> boundary() const;
  bool contains(Point p, real eps = 0) const {
    return p.x >= min_corner.x - eps && p.x <= min_corner.x + side + eps &&
           p.y >= min_corner.y - eps && p.y <= min_corner.y + side + eps;
  }
};

// Axis square centered at c.
inline AxisSquare square_at(Point c, real side) {
  return AxisSquare{{c.x - side / 2, c.y - side / 2}, side};
}

struct Disc {
  Point center;
  real radius = 0;
};

enum class Containment { Inside, Boundary, Outside };

// Simple closed polygon; vertex order is normalized to CCW on construction
// (CW input is reversed, not rejected). Simplicity is not enforced here, see
// polygon_is_simple.
class Polygon {
public:
  explicit Polygon(std::vector<Point> vertices);

  const std::vector<Point>& vertices() const { return verts_; }
  std::size_t size() const { return verts_.size(); }
  Segment edge(std::size_t i) const {
    return {verts_[i], verts_[(i + 1) % verts_.size()]};
  }
  std::vector<Segment> edges() const;
  void bounding_box(Point& lo, Point& hi) const;
  Polygon translated(Point t) const;

private:
  std::vector<Point> verts_;
};

real signed_area(std::span<const Point> loop);

// Shoelace area; positive because polygons are CCW.
real polygon_area(const Polygon& p);

Containment point_in_polygon(Point p, const Polygon& poly, Tolerance tol = {});

real dist_point_segment(Point p, const Segment& s);
real dist_segment_segment(const Segment& s, const Segment& t);

// Distance between two segment sets: min over all pairs.
real dist_polyline_polyline(std::span<const Segment> a, std::span<const Segment> b);

real dist_point_segments(Point p, std::span<const Segment> segs);

// Nearest point of the segment set to p.
Point closest_point_on_segments(Point p, std::span<const Segment> segs);
Point closest_point_on_segment(Point p, const Segment& s);

struct HausdorffResult {
  real value = 0;        // sampled symmetric Hausdorff distance (lower bound)
  real error_bound = 0;  // true distance lies in [value, value + error_bound]
};

// Symmetric Hausdorff distance by sampling each set with point spacing at
// most `spacing`; sample-to-other-set distances are exact, so the only error
// is the half-spacing coverage gap.
HausdorffResult hausdorff_distance(std::span<const Segment> a,
                                   std::span<const Segment> b, real spacing);

// Area of the intersection of P with Q by clipping P against the four
// half-planes of Q. Valid for
// any simple subject polygon: the clipped loop may carry degenerate bridges
// but its signed area equals the intersection area.
real clip_polygon_to_square(const Polygon& p, const AxisSquare& q);

// Same, for a raw CCW loop (used for convex cells).
real clip_loop_to_square(std::span<const Point> loop, const AxisSquare& q);
real clip_loop_to_rect(std::span<const Point> loop, Point lo, Point hi);

// True iff Q lies in the closed region bounded by `region`: all four corners
// Inside, no region vertex interior to Q, and no region edge within eps of
// Q's boundary.
bool square_inside_region(const AxisSquare& q, const Polygon& region, Tolerance tol = {});

// Brute-force simplicity check with a uniform-grid prefilter: non-adjacent
// edges must stay at distance > eps.
bool polygon_is_simple(const Polygon& p, real eps = kDefaultEps);

// Uniform-grid index over a segment set. Nearest-distance queries descend an
// occupancy pyramid best-first, so far queries skip empty space instead of
// scanning it cell by cell.
class SegmentGrid {
public:
  SegmentGrid() = default;
  explicit SegmentGrid(std::span<const Segment> segs, real cell = 0);

  real nearest_distance(Point p) const;
  // Indices of segments whose bounding box inflated by `pad` meets the box.
  std::vector<std::size_t> segments_near_box(Point lo, Point hi, real pad) const;
  bool empty() const { return segs_.empty(); }
  const std::vector<Segment>& segments() const { return segs_; }

private:
  struct OccLevel {
    long nx = 0, ny = 0;
    std::vector<std::uint8_t> occ;
  };

  std::vector<Segment> segs_;
  std::vector<std::vector<std::uint32_t>> cells_;
  std::vector<OccLevel> pyramid_;  // [0] at cell_ pitch, doubling upward
  Point lo_{0, 0};
  real cell_ = 1;
  long nx_ = 0, ny_ = 0;

  long clamp_ix(real x) const;
  long clamp_iy(real y) const;
};

}  // namespace fractk
