#include "fractk/geom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace fractk {

std::vector<Point> AxisSquare::corners() const {
  real x0 = min_corner.x, y0 = min_corner.y;
  return {{x0, y0}, {x0 + side, y0}, {x0 + side, y0 + side}, {x0, y0 + side}};
}

std::vector<Segment> AxisSquare::boundary() const {
  auto c = corners();
  return {{c[0], c[1]}, {c[1], c[2]}, {c[2], c[3]}, {c[3], c[0]}};
}

real signed_area(std::span<const Point> loop) {
  real acc = 0;
  std::size_t n = loop.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = loop[i];
    const Point& b = loop[(i + 1) % n];
    acc += cross(a, b);
  }
  return acc / 2;
}

Polygon::Polygon(std::vector<Point> vertices) : verts_(std::move(vertices)) {
  if (verts_.size() >= 2 && dist(verts_.front(), verts_.back()) == real(0))
    verts_.pop_back();  // tolerate an explicitly closed loop
  if (verts_.size() < 3) throw std::invalid_argument("polygon: fewer than 3 vertices");
  for (const Point& v : verts_)
    if (!finite(v)) throw std::invalid_argument("polygon: non-finite vertex");
  for (std::size_t i = 0; i < verts_.size(); ++i)
    if (dist(verts_[i], verts_[(i + 1) % verts_.size()]) == real(0))
      throw std::invalid_argument("polygon: repeated consecutive vertex");
  real a = signed_area(verts_);
  if (a == real(0)) throw std::invalid_argument("polygon: zero area");
  if (a < real(0)) std::reverse(verts_.begin(), verts_.end());
}

std::vector<Segment> Polygon::edges() const {
  std::vector<Segment> out;
  out.reserve(verts_.size());
  for (std::size_t i = 0; i < verts_.size(); ++i) out.push_back(edge(i));
  return out;
}

void Polygon::bounding_box(Point& lo, Point& hi) const {
  lo = hi = verts_[0];
  for (const Point& v : verts_) {
    lo.x = std::min(lo.x, v.x);
    lo.y = std::min(lo.y, v.y);
    hi.x = std::max(hi.x, v.x);
    hi.y = std::max(hi.y, v.y);
  }
}

Polygon Polygon::translated(Point t) const {
  std::vector<Point> v = verts_;
  for (Point& p : v) p = p + t;
  return Polygon(std::move(v));
}

real polygon_area(const Polygon& p) { return signed_area(p.vertices()); }

real dist_point_segment(Point p, const Segment& s) {
  Point d = s.b - s.a;
  real len2 = dot(d, d);
  if (len2 == real(0)) return dist(p, s.a);
  real t = dot(p - s.a, d) / len2;
  t = std::clamp(t, real(0), real(1));
  return dist(p, s.at(t));
}

Point closest_point_on_segment(Point p, const Segment& s) {
  Point d = s.b - s.a;
  real len2 = dot(d, d);
  if (len2 == real(0)) return s.a;
  real t = std::clamp(dot(p - s.a, d) / len2, real(0), real(1));
  return s.at(t);
}

namespace {

int orient_sign(Point a, Point b, Point c) {
  real v = cross(b - a, c - a);
  return (v > 0) - (v < 0);
}

bool segments_properly_intersect(const Segment& s, const Segment& t) {
  int d1 = orient_sign(t.a, t.b, s.a);
  int d2 = orient_sign(t.a, t.b, s.b);
  int d3 = orient_sign(s.a, s.b, t.a);
  int d4 = orient_sign(s.a, s.b, t.b);
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  auto on = [](Point a, Point b, Point p) {
    return orient_sign(a, b, p) == 0 && std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
  };
  return on(t.a, t.b, s.a) || on(t.a, t.b, s.b) || on(s.a, s.b, t.a) || on(s.a, s.b, t.b);
}

}  // namespace

real dist_segment_segment(const Segment& s, const Segment& t) {
  if (segments_properly_intersect(s, t)) return 0;
  real d = dist_point_segment(s.a, t);
  d = std::min(d, dist_point_segment(s.b, t));
  d = std::min(d, dist_point_segment(t.a, s));
  d = std::min(d, dist_point_segment(t.b, s));
  return d;
}

real dist_polyline_polyline(std::span<const Segment> a, std::span<const Segment> b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("dist_polyline_polyline: empty input");
  real best = std::numeric_limits<real>::infinity();
  for (const Segment& s : a)
    for (const Segment& t : b) {
      best = std::min(best, dist_segment_segment(s, t));
      if (best == real(0)) return 0;
    }
  return best;
}

real dist_point_segments(Point p, std::span<const Segment> segs) {
  if (segs.empty()) throw std::invalid_argument("dist_point_segments: empty input");
  real best = std::numeric_limits<real>::infinity();
  for (const Segment& s : segs) best = std::min(best, dist_point_segment(p, s));
  return best;
}

Point closest_point_on_segments(Point p, std::span<const Segment> segs) {
  if (segs.empty()) throw std::invalid_argument("closest_point_on_segments: empty input");
  real best = std::numeric_limits<real>::infinity();
  Point arg = segs[0].a;
  for (const Segment& s : segs) {
    Point q = closest_point_on_segment(p, s);
    real d = dist(p, q);
    if (d < best) {
      best = d;
      arg = q;
    }
  }
  return arg;
}

Containment point_in_polygon(Point p, const Polygon& poly, Tolerance tol) {
  const auto& v = poly.vertices();
  std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i)
    if (dist_point_segment(p, poly.edge(i)) <= tol.eps) return Containment::Boundary;
  // Ray crossing with the half-open rule; ties were swallowed by the
  // boundary band above.
  bool inside = false;
  for (std::size_t i = 0; i < n; ++i) {
    Point a = v[i], b = v[(i + 1) % n];
    if ((a.y > p.y) != (b.y > p.y)) {
      real xint = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < xint) inside = !inside;
    }
  }
  return inside ? Containment::Inside : Containment::Outside;
}

// --- SegmentGrid ---------------------------------------------------------

SegmentGrid::SegmentGrid(std::span<const Segment> segs, real cell)
    : segs_(segs.begin(), segs.end()) {
  if (segs_.empty()) return;
  Point lo = segs_[0].a, hi = segs_[0].a;
  real max_len = 0;
  for (const Segment& s : segs_) {
    for (Point p : {s.a, s.b}) {
      lo.x = std::min(lo.x, p.x);
      lo.y = std::min(lo.y, p.y);
      hi.x = std::max(hi.x, p.x);
      hi.y = std::max(hi.y, p.y);
    }
    max_len = std::max(max_len, s.length());
  }
  if (cell <= 0) cell = std::max(max_len, real(1e-12));
  lo_ = lo;
  cell_ = cell;
  nx_ = std::max<long>(1, long((hi.x - lo.x) / cell) + 1);
  ny_ = std::max<long>(1, long((hi.y - lo.y) / cell) + 1);
  // Cap the table so a degenerate cell size cannot blow up memory.
  while (double(nx_) * double(ny_) > 4e6) {
    cell_ *= 2;
    nx_ = std::max<long>(1, long((hi.x - lo.x) / cell_) + 1);
    ny_ = std::max<long>(1, long((hi.y - lo.y) / cell_) + 1);
  }
  cells_.assign(std::size_t(nx_ * ny_), {});
  for (std::size_t k = 0; k < segs_.size(); ++k) {
    const Segment& s = segs_[k];
    long x0 = clamp_ix(std::min(s.a.x, s.b.x)), x1 = clamp_ix(std::max(s.a.x, s.b.x));
    long y0 = clamp_iy(std::min(s.a.y, s.b.y)), y1 = clamp_iy(std::max(s.a.y, s.b.y));
    for (long iy = y0; iy <= y1; ++iy)
      for (long ix = x0; ix <= x1; ++ix)
        cells_[std::size_t(iy * nx_ + ix)].push_back(std::uint32_t(k));
  }
  // occupancy pyramid
  OccLevel base;
  base.nx = nx_;
  base.ny = ny_;
  base.occ.resize(std::size_t(nx_ * ny_));
  for (std::size_t i = 0; i < base.occ.size(); ++i) base.occ[i] = cells_[i].empty() ? 0 : 1;
  pyramid_.push_back(std::move(base));
  while (pyramid_.back().nx > 2 || pyramid_.back().ny > 2) {
    const OccLevel& prev = pyramid_.back();
    OccLevel next;
    next.nx = (prev.nx + 1) / 2;
    next.ny = (prev.ny + 1) / 2;
    next.occ.assign(std::size_t(next.nx * next.ny), 0);
    for (long iy = 0; iy < prev.ny; ++iy)
      for (long ix = 0; ix < prev.nx; ++ix)
        if (prev.occ[std::size_t(iy * prev.nx + ix)])
          next.occ[std::size_t((iy / 2) * next.nx + ix / 2)] = 1;
    pyramid_.push_back(std::move(next));
  }
}

long SegmentGrid::clamp_ix(real x) const {
  long i = long(std::floor((x - lo_.x) / cell_));
  return std::clamp(i, 0L, nx_ - 1);
}

long SegmentGrid::clamp_iy(real y) const {
  long i = long(std::floor((y - lo_.y) / cell_));
  return std::clamp(i, 0L, ny_ - 1);
}

real SegmentGrid::nearest_distance(Point p) const {
  if (segs_.empty()) throw std::invalid_argument("SegmentGrid: empty");
  // Fast path: a hit within the 3x3 neighborhood at distance <= cell is
  // provably nearest, and most queries sit on or near the indexed set.
  {
    long cx = clamp_ix(p.x), cy = clamp_iy(p.y);
    real best = std::numeric_limits<real>::infinity();
    for (long iy = std::max(0L, cy - 1); iy <= std::min(ny_ - 1, cy + 1); ++iy)
      for (long ix = std::max(0L, cx - 1); ix <= std::min(nx_ - 1, cx + 1); ++ix)
        for (std::uint32_t k : cells_[std::size_t(iy * nx_ + ix)])
          best = std::min(best, dist_point_segment(p, segs_[k]));
    if (best <= cell_) return best;
  }
  // Best-first descent over the occupancy pyramid: pop the block with the
  // smallest possible distance, expand occupied children, resolve segments
  // at the finest level. Exact, and far queries skip empty space.
  struct Node {
    real lb;
    int level;
    long ix, iy;
    bool operator<(const Node& o) const { return lb > o.lb; }  // min-heap
  };
  auto block_lb = [&](int level, long ix, long iy) {
    real pitch = cell_ * real(1L << level);
    real bx0 = lo_.x + real(ix) * pitch, bx1 = bx0 + pitch;
    real by0 = lo_.y + real(iy) * pitch, by1 = by0 + pitch;
    real dx = std::max({bx0 - p.x, p.x - bx1, real(0)});
    real dy = std::max({by0 - p.y, p.y - by1, real(0)});
    return std::sqrt(dx * dx + dy * dy);
  };
  std::priority_queue<Node> heap;
  int top = int(pyramid_.size()) - 1;
  const OccLevel& root = pyramid_[std::size_t(top)];
  for (long iy = 0; iy < root.ny; ++iy)
    for (long ix = 0; ix < root.nx; ++ix)
      if (root.occ[std::size_t(iy * root.nx + ix)])
        heap.push({block_lb(top, ix, iy), top, ix, iy});
  real best = std::numeric_limits<real>::infinity();
  while (!heap.empty()) {
    Node node = heap.top();
    heap.pop();
    if (node.lb >= best) break;
    if (node.level == 0) {
      for (std::uint32_t k : cells_[std::size_t(node.iy * nx_ + node.ix)])
        best = std::min(best, dist_point_segment(p, segs_[k]));
      continue;
    }
    const OccLevel& child = pyramid_[std::size_t(node.level - 1)];
    for (long dy = 0; dy < 2; ++dy)
      for (long dx = 0; dx < 2; ++dx) {
        long ix = node.ix * 2 + dx, iy = node.iy * 2 + dy;
        if (ix >= child.nx || iy >= child.ny) continue;
        if (!child.occ[std::size_t(iy * child.nx + ix)]) continue;
        real lb = block_lb(node.level - 1, ix, iy);
        if (lb < best) heap.push({lb, node.level - 1, ix, iy});
      }
  }
  return best;
}

std::vector<std::size_t> SegmentGrid::segments_near_box(Point lo, Point hi, real pad) const {
  std::vector<std::size_t> out;
  if (segs_.empty()) return out;
  long x0 = clamp_ix(lo.x - pad), x1 = clamp_ix(hi.x + pad);
  long y0 = clamp_iy(lo.y - pad), y1 = clamp_iy(hi.y + pad);
  std::vector<bool> seen(segs_.size(), false);
  for (long iy = y0; iy <= y1; ++iy)
    for (long ix = x0; ix <= x1; ++ix)
      for (std::uint32_t k : cells_[std::size_t(iy * nx_ + ix)])
        if (!seen[k]) {
          seen[k] = true;
          out.push_back(k);
        }
  return out;
}

// --- Hausdorff by sampling ------------------------------------------------

namespace {

real directed_hausdorff(std::span<const Segment> from, const SegmentGrid& to, real spacing) {
  real worst = 0;
  for (const Segment& s : from) {
    long n = std::max<long>(1, long(std::ceil(s.length() / spacing)));
    for (long i = 0; i <= n; ++i) {
      Point p = s.at(real(i) / real(n));
      worst = std::max(worst, to.nearest_distance(p));
    }
  }
  return worst;
}

}  // namespace

HausdorffResult hausdorff_distance(std::span<const Segment> a,
                                   std::span<const Segment> b, real spacing) {
  if (a.empty() || b.empty()) throw std::invalid_argument("hausdorff_distance: empty input");
  if (!(spacing > 0)) throw std::invalid_argument("hausdorff_distance: spacing must be > 0");
  SegmentGrid ga(a), gb(b);
  real ab = directed_hausdorff(a, gb, spacing);
  real ba = directed_hausdorff(b, ga, spacing);
  return {std::max(ab, ba), spacing / 2};
}

// --- Clipping -------------------------------------------------------------

namespace {

// Clip a loop against the half-plane keep(p) >= 0, where `value` is an affine
// function of p.
std::vector<Point> clip_half_plane(const std::vector<Point>& loop,
                                   const std::function<real(Point)>& value) {
  std::vector<Point> out;
  std::size_t n = loop.size();
  if (n == 0) return out;
  out.reserve(n + 4);
  for (std::size_t i = 0; i < n; ++i) {
    Point cur = loop[i];
    Point nxt = loop[(i + 1) % n];
    real vc = value(cur), vn = value(nxt);
    if (vc >= 0) out.push_back(cur);
    if ((vc < 0) != (vn < 0)) {
      real t = vc / (vc - vn);
      out.push_back(cur + (nxt - cur) * t);
    }
  }
  return out;
}

}  // namespace

real clip_loop_to_rect(std::span<const Point> loop, Point lo, Point hi) {
  std::vector<Point> cur(loop.begin(), loop.end());
  real x0 = lo.x, x1 = hi.x, y0 = lo.y, y1 = hi.y;
  cur = clip_half_plane(cur, [x0](Point p) { return p.x - x0; });
  cur = clip_half_plane(cur, [x1](Point p) { return x1 - p.x; });
  cur = clip_half_plane(cur, [y0](Point p) { return p.y - y0; });
  cur = clip_half_plane(cur, [y1](Point p) { return y1 - p.y; });
  if (cur.size() < 3) return 0;
  return std::max(real(0), signed_area(cur));
}

real clip_loop_to_square(std::span<const Point> loop, const AxisSquare& q) {
  Point hi{q.min_corner.x + q.side, q.min_corner.y + q.side};
  return clip_loop_to_rect(loop, q.min_corner, hi);
}

real clip_polygon_to_square(const Polygon& p, const AxisSquare& q) {
  return clip_loop_to_square(p.vertices(), q);
}

bool square_inside_region(const AxisSquare& q, const Polygon& region, Tolerance tol) {
  for (Point c : q.corners())
    if (point_in_polygon(c, region, tol) != Containment::Inside) return false;
  Point lo = q.min_corner;
  Point hi = {q.min_corner.x + q.side, q.min_corner.y + q.side};
  auto qb = q.boundary();
  const auto& v = region.vertices();
  std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    Segment e{v[i], v[(i + 1) % n]};
    real ex0 = std::min(e.a.x, e.b.x), ex1 = std::max(e.a.x, e.b.x);
    real ey0 = std::min(e.a.y, e.b.y), ey1 = std::max(e.a.y, e.b.y);
    if (ex1 < lo.x - tol.eps || ex0 > hi.x + tol.eps || ey1 < lo.y - tol.eps ||
        ey0 > hi.y + tol.eps)
      continue;
    // A region vertex strictly interior to Q means boundary dips inside.
    if (e.a.x > lo.x + tol.eps && e.a.x < hi.x - tol.eps && e.a.y > lo.y + tol.eps &&
        e.a.y < hi.y - tol.eps)
      return false;
    for (const Segment& s : qb)
      if (dist_segment_segment(e, s) <= tol.eps) return false;
  }
  return true;
}

bool polygon_is_simple(const Polygon& p, real eps) {
  auto edges = p.edges();
  std::size_t n = edges.size();
  SegmentGrid grid(edges);
  for (std::size_t i = 0; i < n; ++i) {
    const Segment& e = edges[i];
    Point lo{std::min(e.a.x, e.b.x), std::min(e.a.y, e.b.y)};
    Point hi{std::max(e.a.x, e.b.x), std::max(e.a.y, e.b.y)};
    for (std::size_t j : grid.segments_near_box(lo, hi, eps)) {
      if (j <= i) continue;
      bool adjacent = (j == (i + 1) % n) || (i == (j + 1) % n);
      if (adjacent) continue;
      if (dist_segment_segment(edges[i], edges[j]) <= eps) return false;
    }
  }
  return true;
}

}  // namespace fractk
