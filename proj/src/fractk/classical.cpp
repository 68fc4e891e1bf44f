#include "fractk/classical.hpp"

#include <cmath>
#include <stdexcept>

namespace fractk {

real Triangle::area() const { return std::abs(cross(b - a, c - a)) / 2; }

Point Triangle::incenter() const {
  real la = dist(b, c), lb = dist(c, a), lc = dist(a, b);
  real s = la + lb + lc;
  return {(la * a.x + lb * b.x + lc * c.x) / s, (la * a.y + lb * b.y + lc * c.y) / s};
}

real Triangle::inradius() const {
  real s = (dist(a, b) + dist(b, c) + dist(c, a)) / 2;
  return area() / s;
}

bool Triangle::contains(Point p, real eps) const {
  real d1 = cross(b - a, p - a);
  real d2 = cross(c - b, p - b);
  real d3 = cross(a - c, p - c);
  bool has_neg = (d1 < -eps) || (d2 < -eps) || (d3 < -eps);
  bool has_pos = (d1 > eps) || (d2 > eps) || (d3 > eps);
  return !(has_neg && has_pos);
}

real Triangle::boundary_distance(Point p) const {
  auto s = sides();
  real d = dist_point_segment(p, s[0]);
  d = std::min(d, dist_point_segment(p, s[1]));
  return std::min(d, dist_point_segment(p, s[2]));
}

real xi_of_beta(real beta) {
  if (!(beta > 0) || !(beta < M_PI / 2))
    throw std::invalid_argument("xi_of_beta: beta must lie in (0, pi/2)");
  return 1 / (2 * (1 + std::sin(beta)));
}

real ClassicalParams::xi() const { return xi_of_beta(beta); }

real ClassicalParams::triangle_height_unit() const { return std::sqrt(xi() - real(0.25)); }

real ClassicalParams::rho() const {
  return std::sin(beta) * std::tan(M_PI / 4 - beta / 2);
}

real classical_dimension(const ClassicalParams& p) {
  return -std::log(real(4)) / std::log(p.xi());
}

real classical_collar_area(const ClassicalParams& p, int j) {
  if (j < 0) throw std::invalid_argument("classical_collar_area: j must be >= 0");
  real xi = p.xi();
  return real(1.5) * std::pow(2 * xi, real(2 * j)) * std::sqrt(xi - real(0.25));
}

namespace {

// One replacement step of the directed edge a->b: four edges whose middle
// pair forms an isosceles triangle with apex angle 2*beta on the `bump_sign`
// side (+1 = left of travel, -1 = right).
struct EdgeRule {
  real xi;
  real height_unit;  // sqrt(xi - 1/4), relative to the parent edge length

  std::array<Point, 3> subdivide(Point a, Point b, int bump_sign) const {
    Point d = b - a;
    Point p1 = a + d * xi;
    Point p3 = b - d * xi;
    Point mid = a + d * real(0.5);
    Point apex = mid + perp(d) * (height_unit * real(bump_sign));
    return {p1, apex, p3};
  }
};

// The recursion is carried out in extended precision: rounding grows by a
// few ulp per level, and deep levels must hold edge lengths to 1e-12
// relative in the kernel's double format.
struct LPoint {
  long double x, y;
};

void expand_leg_l(long double xi, long double height, LPoint a, LPoint b, int depth,
                  int bump_sign, std::vector<LPoint>& out) {
  if (depth == 0) {
    out.push_back(a);
    return;
  }
  LPoint d{b.x - a.x, b.y - a.y};
  LPoint p1{a.x + d.x * xi, a.y + d.y * xi};
  LPoint p3{b.x - d.x * xi, b.y - d.y * xi};
  long double h = height * bump_sign;
  LPoint apex{a.x + d.x / 2 - d.y * h, a.y + d.y / 2 + d.x * h};
  expand_leg_l(xi, height, a, p1, depth - 1, bump_sign, out);
  expand_leg_l(xi, height, p1, apex, depth - 1, bump_sign, out);
  expand_leg_l(xi, height, apex, p3, depth - 1, bump_sign, out);
  expand_leg_l(xi, height, p3, b, depth - 1, bump_sign, out);
}

long double xi_l(const ClassicalParams& p) {
  return 1 / (2 * (1 + std::sin((long double)p.beta)));
}

// Vertex path (without the closing endpoint) of the j-fold evolution of the
// unit edge (0,0)->(1,0), in extended precision.
std::vector<LPoint> canonical_leg_open_l(const ClassicalParams& p, int j, int bump_sign) {
  long double xi = xi_l(p);
  long double height = std::sqrt(xi - 0.25L);
  std::vector<LPoint> path;
  path.reserve((std::size_t(1) << (2 * j)) + 1);
  expand_leg_l(xi, height, {0, 0}, {1, 0}, j, bump_sign, path);
  return path;
}

std::vector<Point> round_path(const std::vector<LPoint>& path) {
  std::vector<Point> out;
  out.reserve(path.size());
  for (const LPoint& q : path) out.push_back({real(q.x), real(q.y)});
  return out;
}

// Orientation-preserving similarity taking (0,0)->a and (1,0)->b.
LPoint map_unit_edge(LPoint p, LPoint a, LPoint b) {
  LPoint d{b.x - a.x, b.y - a.y};
  return {a.x + p.x * d.x - p.y * d.y, a.y + p.x * d.y + p.y * d.x};
}

Point base_apex() { return {0.5, 0.5 * std::sqrt(real(3))}; }

std::vector<LPoint> base_triangle_l() {
  return {{0, 0}, {1, 0}, {0.5L, std::sqrt(3.0L) / 2}};
}

std::vector<LPoint> hexagon_vertices_l(const ClassicalParams& p) {
  long double h = std::sqrt(xi_l(p) - 0.25L);
  auto tri = base_triangle_l();
  std::vector<LPoint> hex;
  for (std::size_t i = 0; i < 3; ++i) {
    LPoint a = tri[i], b = tri[(i + 1) % 3];
    hex.push_back(a);
    // outward apex: midpoint shifted right of travel
    hex.push_back({(a.x + b.x) / 2 + (b.y - a.y) * h, (a.y + b.y) / 2 - (b.x - a.x) * h});
  }
  return hex;
}

// Evolve every edge of `base` j times with the given bump orientation; one
// canonical leg is generated per distinct edge length and mapped rigidly, so
// the three legs cannot drift apart numerically. Everything stays in
// extended precision until the final rounding: at depth 6 the edge lengths
// sit three decades below the coordinates, and the 1e-12 relative length
// budget leaves room for only a couple of double roundings per vertex.
std::vector<Point> evolve_loop(const ClassicalParams& p, const std::vector<LPoint>& base,
                               int j, int bump_sign) {
  std::vector<LPoint> leg = canonical_leg_open_l(p, j, bump_sign);
  std::vector<Point> out;
  out.reserve(leg.size() * base.size());
  std::size_t n = base.size();
  for (std::size_t i = 0; i < n; ++i) {
    LPoint a = base[i], b = base[(i + 1) % n];
    for (const LPoint& q : leg) {
      LPoint m = map_unit_edge(q, a, b);
      out.push_back({real(m.x), real(m.y)});
    }
  }
  return out;
}

}  // namespace

std::vector<Point> classical_one_leg(const ClassicalParams& p, int j) {
  if (j < 0) throw std::invalid_argument("classical_one_leg: j must be >= 0");
  auto path = round_path(canonical_leg_open_l(p, j, +1));
  path.push_back({1, 0});
  return path;
}

Polygon inner_prefractal(const ClassicalParams& p, int j) {
  if (j < 0) throw std::invalid_argument("inner_prefractal: j must be >= 0");
  // CCW traversal puts the polygon interior on the left, so outward bumps go
  // right of travel.
  return Polygon(evolve_loop(p, base_triangle_l(), j, -1));
}

Polygon outer_prefractal(const ClassicalParams& p, int j) {
  if (j < 0) throw std::invalid_argument("outer_prefractal: j must be >= 0");
  // Carved triangles point into the polygon: left of travel.
  return Polygon(evolve_loop(p, hexagon_vertices_l(p), j, +1));
}

std::array<SimilarityMap, 4> classical_ifs(const ClassicalParams& p) {
  real xi = p.xi();
  real s = std::sin(p.beta), c = std::cos(p.beta);
  return {SimilarityMap{xi, 0, {0, 0}},
          SimilarityMap{xi, M_PI / 2 - p.beta, {xi, 0}},
          SimilarityMap{xi, p.beta - M_PI / 2, {1 - xi - xi * s, xi * c}},
          SimilarityMap{xi, 0, {1 - xi, 0}}};
}

std::vector<Segment> ifs_iterate(std::span<const SimilarityMap> maps,
                                 std::span<const Segment> seed, int j, std::size_t cap) {
  if (j < 0) throw std::invalid_argument("ifs_iterate: j must be >= 0");
  double projected = double(seed.size()) * std::pow(double(maps.size()), j);
  if (projected > double(cap)) throw cap_exceeded("ifs_iterate: output would exceed cap");
  std::vector<Segment> cur(seed.begin(), seed.end());
  for (int it = 0; it < j; ++it) {
    std::vector<Segment> next;
    next.reserve(cur.size() * maps.size());
    for (const Segment& s : cur)
      for (const SimilarityMap& m : maps) next.push_back(m.apply(s));
    cur = std::move(next);
  }
  return cur;
}

ClassicalLevel::ClassicalLevel(const ClassicalParams& params, int j)
    : params_(params),
      j_(j),
      inner_(inner_prefractal(params, j)),
      outer_(outer_prefractal(params, j)) {
  real h = params_.triangle_height_unit();
  real xi = params_.xi();

  if (j >= 1) {
    EdgeRule rule{xi, h};
    Polygon prev_inner = inner_prefractal(params_, j - 1);
    const auto& vi = prev_inner.vertices();
    new_inner_.reserve(vi.size());
    for (std::size_t i = 0; i < vi.size(); ++i) {
      Point a = vi[i], b = vi[(i + 1) % vi.size()];
      auto [p1, apex, p3] = rule.subdivide(a, b, -1);
      new_inner_.push_back({p1, apex, p3});
    }
    Polygon prev_outer = outer_prefractal(params_, j - 1);
    const auto& vo = prev_outer.vertices();
    carved_outer_.reserve(vo.size());
    for (std::size_t i = 0; i < vo.size(); ++i) {
      Point a = vo[i], b = vo[(i + 1) % vo.size()];
      auto [p1, apex, p3] = rule.subdivide(a, b, +1);
      carved_outer_.push_back({p1, apex, p3});
    }
  }

  const auto& v = inner_.vertices();
  collar_.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Point a = v[i], b = v[(i + 1) % v.size()];
    Point apex = (a + b) * real(0.5) - perp(b - a) * h;
    collar_.push_back({a, b, apex});
  }
}

real ClassicalLevel::edge_length_inner() const { return std::pow(params_.xi(), real(j_)); }

real ClassicalLevel::edge_length_outer() const {
  return std::pow(params_.xi(), real(j_) + real(0.5));
}

}  // namespace fractk
