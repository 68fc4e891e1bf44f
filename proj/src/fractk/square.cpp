#include "fractk/square.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fractk {

namespace {

// The eight step vectors of the replacement rule in the frame of a directed
// edge with unit direction u and left normal n: bump left first, then right.
std::array<IVec, 8> rule_steps(IVec u) {
  IVec n{-u.y, u.x};
  auto neg = [](IVec a) { return IVec{-a.x, -a.y}; };
  return {u, n, u, neg(n), neg(n), u, n, u};
}

}  // namespace

SquareLevel::SquareLevel(int j, std::size_t edge_cap) : j_(j) {
  if (j < 0) throw std::invalid_argument("SquareLevel: level must be >= 0");
  double edges = 4.0 * std::pow(8.0, j);
  if (edges > double(edge_cap)) throw cap_exceeded("SquareLevel: edge count exceeds cap");

  scale_ = 1;
  for (int i = 0; i < j; ++i) scale_ *= 4;

  loop_ = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  for (int it = 0; it < j; ++it) {
    for (IVec& v : loop_) v = {4 * v.x, 4 * v.y};
    std::vector<IVec> next;
    next.reserve(loop_.size() * 8);
    std::size_t n = loop_.size();
    for (std::size_t i = 0; i < n; ++i) {
      IVec a = loop_[i], b = loop_[(i + 1) % n];
      IVec u{(b.x - a.x) / 4, (b.y - a.y) / 4};
      next.push_back(a);
      IVec cur = a;
      auto steps = rule_steps(u);
      for (int s = 0; s < 7; ++s) {
        cur = {cur.x + steps[s].x, cur.y + steps[s].y};
        next.push_back(cur);
      }
    }
    loop_ = std::move(next);
  }

  // Scanline fill: vertical boundary edges toggle rows.
  min_x_ = max_x_ = loop_[0].x;
  min_y_ = max_y_ = loop_[0].y;
  for (const IVec& v : loop_) {
    min_x_ = std::min(min_x_, v.x);
    max_x_ = std::max(max_x_, v.x);
    min_y_ = std::min(min_y_, v.y);
    max_y_ = std::max(max_y_, v.y);
  }
  std::size_t height = std::size_t(max_y_ - min_y_);
  std::vector<std::vector<long long>> crossings(height);
  std::size_t n = loop_.size();
  for (std::size_t i = 0; i < n; ++i) {
    IVec a = loop_[i], b = loop_[(i + 1) % n];
    if (a.x != b.x) continue;
    long long y0 = std::min(a.y, b.y), y1 = std::max(a.y, b.y);
    for (long long y = y0; y < y1; ++y) crossings[std::size_t(y - min_y_)].push_back(a.x);
  }
  rows_.resize(height);
  for (std::size_t r = 0; r < height; ++r) {
    auto& xs = crossings[r];
    std::sort(xs.begin(), xs.end());
    for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
      rows_[r].runs.emplace_back(xs[k], xs[k + 1]);
      cell_count_ += std::size_t(xs[k + 1] - xs[k]);
    }
  }
  edge_blocks();  // built here so later parallel area queries stay read-only
}

Polygon SquareLevel::boundary_polygon() const {
  std::vector<Point> pts;
  pts.reserve(loop_.size());
  real u = unit();
  for (const IVec& v : loop_) pts.push_back({real(v.x) * u, real(v.y) * u});
  return Polygon(std::move(pts));
}

std::vector<Segment> SquareLevel::boundary_segments() const {
  std::vector<Segment> out;
  out.reserve(loop_.size());
  real u = unit();
  std::size_t n = loop_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const IVec& a = loop_[i];
    const IVec& b = loop_[(i + 1) % n];
    out.push_back({{real(a.x) * u, real(a.y) * u}, {real(b.x) * u, real(b.y) * u}});
  }
  return out;
}

real SquareLevel::area() const {
  // Integer shoelace, exact.
  long long acc2 = 0;
  std::size_t n = loop_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const IVec& a = loop_[i];
    const IVec& b = loop_[(i + 1) % n];
    acc2 += a.x * b.y - a.y * b.x;
  }
  return real(acc2) / (2 * real(scale_) * real(scale_));
}

bool SquareLevel::cell_inside(long long ix, long long iy) const {
  if (iy < min_y_ || iy >= max_y_) return false;
  const auto& runs = rows_[std::size_t(iy - min_y_)].runs;
  auto it = std::upper_bound(runs.begin(), runs.end(), ix,
                             [](long long v, const auto& run) { return v < run.first; });
  if (it == runs.begin()) return false;
  --it;
  return ix >= it->first && ix < it->second;
}

std::vector<std::array<long long, 2>> SquareLevel::cells() const {
  std::vector<std::array<long long, 2>> out;
  out.reserve(cell_count_);
  for (long long iy = min_y_; iy < max_y_; ++iy)
    for (const auto& [s, e] : rows_[std::size_t(iy - min_y_)].runs)
      for (long long ix = s; ix < e; ++ix) out.push_back({ix, iy});
  return out;
}

std::array<Point, 4> SquareLevel::collar_cell(std::size_t k) const {
  std::size_t n = loop_.size();
  IVec a = loop_[k], b = loop_[(k + 1) % n];
  real u = unit();
  Point pa{real(a.x) * u, real(a.y) * u};
  Point pb{real(b.x) * u, real(b.y) * u};
  Point mid = (pa + pb) * real(0.5);
  Point half = perp(pb - pa) * real(0.5);
  return {pa, mid - half, pb, mid + half};
}

real SquareLevel::collar_area() const {
  // edges * l^2 / 2; interiors are pairwise disjoint.
  return real(loop_.size()) / (2 * real(scale_) * real(scale_));
}

std::pair<std::array<long long, 2>, std::array<long long, 2>> SquareLevel::edge_cells(
    std::size_t k) const {
  std::size_t n = loop_.size();
  IVec a = loop_[k], b = loop_[(k + 1) % n];
  std::array<long long, 2> left, right;
  if (a.y == b.y) {  // horizontal edge
    long long x = std::min(a.x, b.x);
    left = {x, (b.x > a.x) ? a.y : a.y - 1};
    right = {x, (b.x > a.x) ? a.y - 1 : a.y};
  } else {
    long long y = std::min(a.y, b.y);
    left = {(b.y > a.y) ? a.x - 1 : a.x, y};
    right = {(b.y > a.y) ? a.x : a.x - 1, y};
  }
  // CCW traversal keeps the interior on the left.
  if (cell_inside(left[0], left[1])) return {left, right};
  return {right, left};
}

bool SquareLevel::diamond_present_minus(IVec c) const {
  // c in doubled units; exactly one coordinate is odd.
  if ((c.x & 1) != 0) {  // horizontal grid edge
    long long ix = (c.x - 1) / 2, iy = c.y / 2;
    return cell_inside(ix, iy) && cell_inside(ix, iy - 1);
  }
  long long ix = c.x / 2, iy = (c.y - 1) / 2;
  return cell_inside(ix, iy) && cell_inside(ix - 1, iy);
}

bool SquareLevel::diamond_present_plus(IVec c) const {
  if ((c.x & 1) != 0) {
    long long ix = (c.x - 1) / 2, iy = c.y / 2;
    return cell_inside(ix, iy) || cell_inside(ix, iy - 1);
  }
  long long ix = c.x / 2, iy = (c.y - 1) / 2;
  return cell_inside(ix, iy) || cell_inside(ix - 1, iy);
}

real SquareLevel::inner_area() const {
  return 1 - real(1) / real(1ll << j_);
}

real SquareLevel::outer_area() const {
  return 1 + real(1) / real(1ll << j_);
}

void SquareLevel::build_boundaries() const {
  if (!inner_bd_.empty() || !outer_bd_.empty()) return;
  // Every diamond side joins a grid point G (even,even doubled coordinates)
  // to a dual point D (odd,odd); exactly two diamonds share it, centered at
  // (D.x, G.y) and (G.x, D.y). A side of a present diamond is exposed when
  // its partner diamond is absent. Candidate diamonds are enumerated once
  // per grid edge by merging the cell runs of the two adjacent rows/columns,
  // so no hashing or dedup is needed and the output order is the scan order.
  auto classify = [&](IVec c, bool minus) {
    return minus ? diamond_present_minus(c) : diamond_present_plus(c);
  };
  auto emit_exposed = [&](IVec c, bool minus, std::vector<Segment>& out,
                          std::vector<IVec>& owners) {
    IVec g1, g2, d1, d2;
    if ((c.x & 1) != 0) {
      g1 = {c.x - 1, c.y};
      g2 = {c.x + 1, c.y};
      d1 = {c.x, c.y - 1};
      d2 = {c.x, c.y + 1};
    } else {
      g1 = {c.x, c.y - 1};
      g2 = {c.x, c.y + 1};
      d1 = {c.x - 1, c.y};
      d2 = {c.x + 1, c.y};
    }
    for (IVec g : {g1, g2})
      for (IVec d : {d1, d2}) {
        IVec cand1{d.x, g.y};
        IVec cand2{g.x, d.y};
        IVec partner = (cand1 == c) ? cand2 : cand1;
        if (!classify(partner, minus)) {
          out.push_back({to_real(g), to_real(d)});
          owners.push_back(c);
        }
      }
  };
  // Merged runs of two adjacent rows: columns where at least one cell is
  // inside.
  auto merged_runs = [&](long long iy_a, long long iy_b) {
    std::vector<std::pair<long long, long long>> merged;
    auto append = [&](long long iy) {
      if (iy < min_y_ || iy >= max_y_) return;
      for (const auto& run : rows_[std::size_t(iy - min_y_)].runs) merged.push_back(run);
    };
    append(iy_a);
    append(iy_b);
    std::sort(merged.begin(), merged.end());
    std::vector<std::pair<long long, long long>> out;
    for (const auto& run : merged) {
      if (!out.empty() && run.first <= out.back().second)
        out.back().second = std::max(out.back().second, run.second);
      else
        out.push_back(run);
    }
    return out;
  };
  for (long long iy = min_y_; iy <= max_y_; ++iy) {
    // Horizontal grid edges at height iy: diamonds centered at (2i+1, 2iy).
    for (const auto& [s, e] : merged_runs(iy - 1, iy)) {
      for (long long ix = s; ix < e; ++ix) {
        IVec c{2 * ix + 1, 2 * iy};
        if (diamond_present_minus(c)) emit_exposed(c, true, inner_bd_, inner_bd_owner_);
        if (diamond_present_plus(c)) emit_exposed(c, false, outer_bd_, outer_bd_owner_);
      }
    }
    // Vertical grid edges in row iy: diamonds centered at (2i, 2iy+1), where
    // cell (i-1,iy) or (i,iy) is inside.
    if (iy < max_y_) {
      for (const auto& [s, e] : rows_[std::size_t(iy - min_y_)].runs) {
        for (long long ix = s; ix <= e; ++ix) {
          IVec c{2 * ix, 2 * iy + 1};
          if (diamond_present_minus(c)) emit_exposed(c, true, inner_bd_, inner_bd_owner_);
          if (diamond_present_plus(c)) emit_exposed(c, false, outer_bd_, outer_bd_owner_);
        }
      }
    }
  }
}

const std::vector<Segment>& SquareLevel::inner_boundary() const {
  build_boundaries();
  return inner_bd_;
}

const std::vector<Segment>& SquareLevel::outer_boundary() const {
  build_boundaries();
  return outer_bd_;
}

IVec SquareLevel::inner_boundary_owner(std::size_t k) const {
  build_boundaries();
  return inner_bd_owner_[k];
}

IVec SquareLevel::outer_boundary_owner(std::size_t k) const {
  build_boundaries();
  return outer_bd_owner_[k];
}

bool SquareLevel::point_in_inner(IVec p) const {
  // Covered by some present diamond: |p - c|_1 <= 1 in doubled units.
  long long px = p.x & 1, py = p.y & 1;
  std::vector<IVec> candidates;
  if (px != py) {
    candidates.push_back(p);
  } else {
    candidates = {{p.x - 1, p.y}, {p.x + 1, p.y}, {p.x, p.y - 1}, {p.x, p.y + 1}};
  }
  for (IVec c : candidates)
    if (diamond_present_minus(c)) return true;
  return false;
}

bool SquareLevel::point_in_outer(IVec p) const {
  long long px = p.x & 1, py = p.y & 1;
  std::vector<IVec> candidates;
  if (px != py) {
    candidates.push_back(p);
  } else {
    candidates = {{p.x - 1, p.y}, {p.x + 1, p.y}, {p.x, p.y - 1}, {p.x, p.y + 1}};
  }
  for (IVec c : candidates)
    if (diamond_present_plus(c)) return true;
  return false;
}

bool SquareLevel::point_in_outer_scaled(IVec q, int shift) const {
  if (shift <= 0) return point_in_outer(q);
  long long f = 1;
  for (int i = 0; i < shift; ++i) f *= 4;
  // Present diamond centers c with |q - f c|_1 <= f cover the point; c has
  // exactly one odd coordinate, so scan the few lattice candidates nearby.
  long long cx0 = q.x >= 0 ? q.x / f : -((-q.x + f - 1) / f);
  long long cy0 = q.y >= 0 ? q.y / f : -((-q.y + f - 1) / f);
  for (long long cx = cx0 - 1; cx <= cx0 + 2; ++cx)
    for (long long cy = cy0 - 1; cy <= cy0 + 2; ++cy) {
      if (((cx ^ cy) & 1) == 0) continue;  // need exactly one odd coordinate
      long long l1 = std::llabs(q.x - f * cx) + std::llabs(q.y - f * cy);
      if (l1 <= f && diamond_present_plus(IVec{cx, cy})) return true;
    }
  return false;
}

real SquareLevel::run_overlap(long long iy, real x0, real x1) const {
  if (iy < min_y_ || iy >= max_y_) return 0;
  const auto& runs = rows_[std::size_t(iy - min_y_)].runs;
  // first run that can overlap [x0, x1)
  auto it = std::upper_bound(runs.begin(), runs.end(), x0,
                             [](real v, const auto& run) { return v < real(run.second); });
  real acc = 0;
  for (; it != runs.end() && real(it->first) < x1; ++it) {
    real lo = std::max(x0, real(it->first));
    real hi = std::min(x1, real(it->second));
    if (hi > lo) acc += hi - lo;
  }
  return acc;
}

real SquareLevel::cell_region_area_in_rect(Point lo, Point hi) const {
  // Convert to cell units.
  real s = real(scale_);
  real x0 = lo.x * s, x1 = hi.x * s, y0 = lo.y * s, y1 = hi.y * s;
  if (x1 <= x0 || y1 <= y0) return 0;
  long long ry0 = (long long)std::floor(y0), ry1 = (long long)std::ceil(y1);
  real acc = 0;
  for (long long iy = std::max(ry0, min_y_); iy < std::min(ry1, max_y_); ++iy) {
    real ycov = std::min(y1, real(iy + 1)) - std::max(y0, real(iy));
    if (ycov <= 0) continue;
    acc += ycov * run_overlap(iy, x0, x1);
  }
  return acc / (s * s);
}

const SquareLevel::EdgeBlocks& SquareLevel::edge_blocks() const {
  if (blocks_.bw == 0) {
    EdgeBlocks eb;
    eb.block = 64;
    eb.bw = (max_x_ - min_x_) / eb.block + 2;
    eb.bh = (max_y_ - min_y_) / eb.block + 2;
    eb.ids.assign(std::size_t(eb.bw * eb.bh), {});
    std::size_t n = loop_.size();
    for (std::size_t k = 0; k < n; ++k) {
      IVec a = loop_[k], b = loop_[(k + 1) % n];
      long long bx = (std::min(a.x, b.x) - min_x_) / eb.block;
      long long by = (std::min(a.y, b.y) - min_y_) / eb.block;
      eb.ids[std::size_t(by * eb.bw + bx)].push_back(std::uint32_t(k));
    }
    blocks_ = std::move(eb);
  }
  return blocks_;
}

// Area of the inboard collar half-diamond over boundary edge k clipped to
// the rectangle; `full` reports a triangle wholly inside.
real SquareLevel::collar_triangle_clip(std::size_t k, Point lo, Point hi, bool& full) const {
  real s = real(scale_);
  real u = unit();
  IVec a = loop_[k], b = loop_[(k + 1) % loop_.size()];
  Point pa{real(a.x) * u, real(a.y) * u};
  Point pb{real(b.x) * u, real(b.y) * u};
  Point inside_dual = ((pa + pb) * real(0.5)) + perp(pb - pa) * real(0.5);
  std::array<Point, 3> tri{pa, pb, inside_dual};
  real tx0 = std::min({pa.x, pb.x, inside_dual.x});
  real tx1 = std::max({pa.x, pb.x, inside_dual.x});
  real ty0 = std::min({pa.y, pb.y, inside_dual.y});
  real ty1 = std::max({pa.y, pb.y, inside_dual.y});
  if (tx0 >= lo.x && tx1 <= hi.x && ty0 >= lo.y && ty1 <= hi.y) {
    full = true;
    return real(0.25) / (s * s);
  }
  full = false;
  if (tx1 < lo.x || tx0 > hi.x || ty1 < lo.y || ty0 > hi.y) return 0;
  return clip_loop_to_rect(tri, lo, hi);
}

real SquareLevel::inner_region_area_in_rect(Point lo, Point hi) const {
  real cells = cell_region_area_in_rect(lo, hi);
  // Subtract the inboard collar halves: one triangle per boundary edge, with
  // vertices at the edge endpoints and the inside dual point. Blocks wholly
  // inside the rectangle contribute exactly l^2/4 per edge.
  const EdgeBlocks& eb = edge_blocks();
  real s = real(scale_);
  real u = unit();
  real pad = real(0.5) * u;
  long long B = eb.block;
  long long bx0 = std::clamp(((long long)std::floor(lo.x * s) - 1 - min_x_) / B, 0ll, eb.bw - 1);
  long long bx1 = std::clamp(((long long)std::ceil(hi.x * s) + 1 - min_x_) / B, 0ll, eb.bw - 1);
  long long by0 = std::clamp(((long long)std::floor(lo.y * s) - 1 - min_y_) / B, 0ll, eb.bh - 1);
  long long by1 = std::clamp(((long long)std::ceil(hi.y * s) + 1 - min_y_) / B, 0ll, eb.bh - 1);
  real removed = 0;
  for (long long by = by0; by <= by1; ++by) {
    for (long long bx = bx0; bx <= bx1; ++bx) {
      const auto& ids = eb.ids[std::size_t(by * eb.bw + bx)];
      if (ids.empty()) continue;
      // block bbox in real units, inflated by the triangle reach
      real wx0 = real(min_x_ + bx * B) * u - pad;
      real wx1 = real(min_x_ + (bx + 1) * B + 1) * u + pad;
      real wy0 = real(min_y_ + by * B) * u - pad;
      real wy1 = real(min_y_ + (by + 1) * B + 1) * u + pad;
      if (wx0 >= lo.x && wx1 <= hi.x && wy0 >= lo.y && wy1 <= hi.y) {
        removed += real(ids.size()) * real(0.25) / (s * s);
        continue;
      }
      if (wx1 < lo.x || wx0 > hi.x || wy1 < lo.y || wy0 > hi.y) continue;
      for (std::uint32_t k : ids) {
        bool full = false;
        removed += collar_triangle_clip(k, lo, hi, full);
      }
    }
  }
  return cells - removed;
}

std::array<SimilarityMap, 8> square_ifs() {
  const real xi = real(0.25);
  const real R = M_PI / 2;
  return {SimilarityMap{xi, 0, {0, 0}},
          SimilarityMap{xi, R, {xi, 0}},
          SimilarityMap{xi, 0, {xi, xi}},
          SimilarityMap{xi, -R, {2 * xi, xi}},
          SimilarityMap{xi, -R, {2 * xi, 0}},
          SimilarityMap{xi, 0, {2 * xi, -xi}},
          SimilarityMap{xi, R, {3 * xi, -xi}},
          SimilarityMap{xi, 0, {3 * xi, 0}}};
}

std::vector<Point> square_one_leg(int j) {
  if (j < 0) throw std::invalid_argument("square_one_leg: j must be >= 0");
  std::vector<IVec> path{{0, 0}, {1, 0}};
  for (int it = 0; it < j; ++it) {
    for (IVec& v : path) v = {4 * v.x, 4 * v.y};
    std::vector<IVec> next;
    next.reserve((path.size() - 1) * 8 + 1);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      IVec a = path[i], b = path[i + 1];
      IVec u{(b.x - a.x) / 4, (b.y - a.y) / 4};
      next.push_back(a);
      IVec cur = a;
      auto steps = rule_steps(u);
      for (int s = 0; s < 7; ++s) {
        cur = {cur.x + steps[s].x, cur.y + steps[s].y};
        next.push_back(cur);
      }
    }
    next.push_back(path.back());
    path = std::move(next);
  }
  real u = real(1);
  for (int i = 0; i < j; ++i) u /= 4;
  std::vector<Point> out;
  out.reserve(path.size());
  for (const IVec& v : path) out.push_back({real(v.x) * u, real(v.y) * u});
  return out;
}

bool square_tiling_check(int j, const std::vector<std::array<int, 2>>& offsets) {
  SquareLevel lv(j);
  long long s = lv.scale();
  // Owner map over the bounding box of all translates.
  long long lo = -2 * s, hi = 3 * s;
  std::size_t w = std::size_t(hi - lo);
  std::vector<signed char> owner(w * w, -1);
  auto cells = lv.cells();
  for (std::size_t t = 0; t < offsets.size(); ++t) {
    long long ox = offsets[t][0] * s, oy = offsets[t][1] * s;
    for (const auto& c : cells) {
      long long x = c[0] + ox, y = c[1] + oy;
      if (x < lo || x >= hi || y < lo || y >= hi) return false;
      auto& cell = owner[std::size_t(y - lo) * w + std::size_t(x - lo)];
      if (cell != -1) return false;  // overlap
      cell = static_cast<signed char>(t);
    }
  }
  // Central unit square covered.
  for (long long y = 0; y < s; ++y)
    for (long long x = 0; x < s; ++x)
      if (owner[std::size_t(y - lo) * w + std::size_t(x - lo)] == -1) return false;
  return true;
}

}  // namespace fractk
