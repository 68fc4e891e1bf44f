#pragma once

#include <array>
#include <vector>

#include "fractk/geom.hpp"

namespace fractk {

// Planar similarity p -> shift + R(angle) * (ratio * p).
struct SimilarityMap {
  real ratio = 1;
  real angle = 0;
  Point shift{0, 0};

  Point apply(Point p) const { return shift + rotate(p * ratio, angle); }
  Segment apply(const Segment& s) const { return {apply(s.a), apply(s.b)}; }
};

struct Triangle {
  Point a, b, c;

  std::array<Segment, 3> sides() const { return {Segment{a, b}, Segment{b, c}, Segment{c, a}}; }
  real area() const;
  Point incenter() const;
  real inradius() const;
  bool contains(Point p, real eps = 0) const;
  real boundary_distance(Point p) const;
  Triangle translated(Point t) const { return {a + t, b + t, c + t}; }
};

// Snowflake family parameter: beta is half the apex angle of the added
// triangles; the side ratio xi = 1/(2(1+sin beta)) lies in (1/4, 1/2) and is
// always recomputed from beta.
struct ClassicalParams {
  real beta;

  real xi() const;
  real triangle_height_unit() const;  // sqrt(xi - 1/4)
  real rho() const;                   // inradius of a unit-leg added triangle
};

real xi_of_beta(real beta);

// Hausdorff dimension of the limit boundary, -log 4 / log xi.
real classical_dimension(const ClassicalParams& p);

// Closed-form collar area (3/2) (2 xi)^(2j) sqrt(xi - 1/4).
real classical_collar_area(const ClassicalParams& p, int j);

Polygon inner_prefractal(const ClassicalParams& p, int j);
Polygon outer_prefractal(const ClassicalParams& p, int j);

// Vertex path of the level-j evolution of the directed edge (0,0)->(1,0) with
// added triangles pointing left (+y); this is the frame the IFS reproduces.
std::vector<Point> classical_one_leg(const ClassicalParams& p, int j);

std::array<SimilarityMap, 4> classical_ifs(const ClassicalParams& p);

// j-fold application of the map union, parent-edge-major order. Throws
// cap_exceeded when maps^j * |seed| would exceed `cap`.
std::vector<Segment> ifs_iterate(std::span<const SimilarityMap> maps,
                                 std::span<const Segment> seed, int j,
                                 std::size_t cap = std::size_t(1) << 24);

// Geometry bundle for one level: polygons plus the triangle families the
// thickness certification walks (level-j inner additions, level-j outer
// carvings, and the collar crown over the inner edges).
class ClassicalLevel {
public:
  ClassicalLevel(const ClassicalParams& params, int j);

  const ClassicalParams& params() const { return params_; }
  int level() const { return j_; }
  real edge_length_inner() const;  // xi^j
  real edge_length_outer() const;  // xi^(j+1/2)

  const Polygon& inner() const { return inner_; }
  const Polygon& outer() const { return outer_; }
  const std::vector<Triangle>& new_inner_triangles() const { return new_inner_; }
  const std::vector<Triangle>& carved_outer_triangles() const { return carved_outer_; }
  // One crown triangle per inner edge; their union is the collar.
  const std::vector<Triangle>& collar_cells() const { return collar_; }

  std::vector<Segment> inner_edges() const { return inner_.edges(); }
  std::vector<Segment> outer_edges() const { return outer_.edges(); }

private:
  ClassicalParams params_;
  int j_;
  Polygon inner_;
  Polygon outer_;
  std::vector<Triangle> new_inner_;
  std::vector<Triangle> carved_outer_;
  std::vector<Triangle> collar_;
};

}  // namespace fractk
