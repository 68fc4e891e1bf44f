#include "fractk/thickness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>

namespace fractk {

namespace {

bool in_interval(real v, real lo, real hi, real slack) {
  real pad_lo = slack * std::max(real(1), std::abs(lo));
  real pad_hi = slack * std::max(real(1), std::abs(hi));
  return v >= lo - pad_lo && v <= hi + pad_hi;
}

real dist_square_to_segments(const AxisSquare& q, std::span<const Segment> segs) {
  auto qb = q.boundary();
  return dist_polyline_polyline(qb, segs);
}

// Distance from the square to the segment set, using the grid to restrict to
// nearby segments. Expands the search window until a hit is certain.
real dist_square_to_grid(const AxisSquare& q, const SegmentGrid& grid) {
  Point lo = q.min_corner;
  Point hi{q.min_corner.x + q.side, q.min_corner.y + q.side};
  real pad = q.side;
  for (int round = 0; round < 40; ++round) {
    auto near = grid.segments_near_box(lo, hi, pad);
    if (!near.empty()) {
      real best = std::numeric_limits<real>::infinity();
      auto qb = q.boundary();
      for (std::size_t k : near)
        for (const Segment& side : qb)
          best = std::min(best, dist_segment_segment(grid.segments()[k], side));
      if (best <= pad) return best;  // nothing outside the window can beat this
    }
    pad *= 4;
  }
  return dist_square_to_segments(q, grid.segments());
}

// Argmin point on the segment set realizing the distance to the square.
Point closest_boundary_point_to_square(const AxisSquare& q, const SegmentGrid& grid) {
  Point lo = q.min_corner;
  Point hi{q.min_corner.x + q.side, q.min_corner.y + q.side};
  real pad = q.side;
  auto qb = q.boundary();
  for (int round = 0; round < 40; ++round) {
    auto near = grid.segments_near_box(lo, hi, pad);
    real best = std::numeric_limits<real>::infinity();
    Point arg{};
    for (std::size_t k : near) {
      const Segment& e = grid.segments()[k];
      for (const Segment& side : qb) {
        // Closest pair of two non-crossing segments is endpoint-to-segment.
        for (Point cand : {e.a, e.b, closest_point_on_segment(side.a, e),
                           closest_point_on_segment(side.b, e)}) {
          real d = dist_point_segment(cand, side);
          if (d < best) {
            best = d;
            arg = cand;
          }
        }
      }
    }
    if (best <= pad) return arg;
    pad *= 4;
  }
  throw std::runtime_error("closest_boundary_point_to_square: no boundary found");
}

Point random_point_on_segments(std::span<const Segment> segs, SplitMix64& rng) {
  std::size_t k = std::size_t(rng.below(segs.size()));
  real t = real(rng.uniform01());
  return segs[k].at(t);
}

}  // namespace

bool WitnessReport::within_bounds(real rel_slack) const {
  for (const auto& [key, value] : realized) {
    auto it = bounds.find(key);
    if (it == bounds.end()) continue;
    if (!in_interval(value, it->second.first, it->second.second, rel_slack)) return false;
  }
  return true;
}

ThicknessConstants classical_proof_constants(const ClassicalParams& p) {
  real rho = p.rho();
  real sq = std::sqrt(p.xi());
  ThicknessConstants k;
  k.c = real(0.5);
  k.c1m = k.c2m = rho / std::sqrt(real(2));
  k.c3m = rho / 2;
  k.c4m = 2;
  k.c1p = k.c1m * sq;
  k.c2p = k.c2m * sq;
  k.c3p = k.c3m * sq;
  k.c4p = k.c4m * sq;
  return k;
}

ThicknessConstants square_proof_constants() {
  ThicknessConstants k;
  k.c = 1;
  k.c1m = k.c2m = real(0.25);
  k.c3m = real(0.25) / std::sqrt(real(2));
  k.c4m = real(0.375);
  k.c1p = k.c1m;
  k.c2p = k.c2m;
  k.c3p = k.c3m;
  k.c4p = k.c4m;
  return k;
}

BallWitness ball_condition_witness(const SegmentGrid& boundary, Point x, real r,
                                   int grid_depth) {
  if (!(r > 0) || !(r <= 1)) throw std::invalid_argument("ball_condition_witness: need 0<r<=1");
  long n = 1L << grid_depth;
  real pitch = r / real(n);
  BallWitness best;
  best.disc = Disc{x, 0};
  for (long iy = -n; iy <= n; ++iy) {
    for (long ix = -n; ix <= n; ++ix) {
      Point y{x.x + real(ix) * pitch, x.y + real(iy) * pitch};
      real off = dist(x, y);
      if (off >= r) continue;
      real d = boundary.nearest_distance(y);
      // eta r <= r - |x-y| keeps the disc inside B(x,r); 2 eta r <= d keeps
      // it a full eta r away from the set.
      real eta = std::min(1 - off / r, d / (2 * r));
      if (eta > best.eta) {
        best.eta = eta;
        best.disc = Disc{y, eta * r};
      }
    }
  }
  return best;
}

std::vector<Point> Certifier::stratified_inner_boundary_points(std::size_t count,
                                                               SplitMix64& rng) const {
  const auto& segs = inner_boundary_segments();
  std::size_t n = segs.size();
  std::vector<Point> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    std::size_t lo = k * n / count;
    std::size_t hi = std::max(lo + 1, (k + 1) * n / count);
    std::size_t idx = lo + std::size_t(rng.below(hi - lo));
    // Edge midpoints sit in congruent local frames across refinement levels,
    // which keeps cross-level scan statistics comparable.
    out.push_back(segs[std::min(idx, n - 1)].at(real(0.5)));
  }
  return out;
}

InteriorScanResult Certifier::interior_regularity_scan(std::span<const Point> centers,
                                                       std::span<const real> sides) const {
  if (centers.empty() || sides.empty())
    throw std::invalid_argument("interior_regularity_scan: empty input");
  for (real s : sides)
    if (!(s > 0) || s > 1)
      throw std::invalid_argument("interior_regularity_scan: sides must lie in (0,1]");
  InteriorScanResult out;
  out.min_ratio = std::numeric_limits<real>::infinity();
  std::vector<real> ratios(centers.size() * sides.size());
  parallel_for(ratios.size(), [&](std::size_t idx) {
    std::size_t ci = idx / sides.size();
    std::size_t si = idx % sides.size();
    AxisSquare q = square_at(centers[ci], sides[si]);
    ratios[idx] = region_area_in_square(q) / (sides[si] * sides[si]);
  });
  for (std::size_t idx = 0; idx < ratios.size(); ++idx) {
    if (ratios[idx] < out.min_ratio) {
      out.min_ratio = ratios[idx];
      out.argmin_center = centers[idx / sides.size()];
      out.argmin_side = sides[idx % sides.size()];
    }
  }
  out.cubes = ratios.size();
  return out;
}

// ---------------------------------------------------------------------------
// Shared witness assembly
// ---------------------------------------------------------------------------

namespace {

struct BoundaryContext {
  std::vector<Segment> inner_bd;
  std::vector<Segment> outer_bd;
  SegmentGrid inner_grid;
  SegmentGrid outer_grid;
};

// Fill the realized/bounds table of an interior-cube report and verify the
// chain c1 <= l <= c2, c3 <= dist(Q, boundary) <= dist(Q, x) <= c4.
void finish_cube_report(WitnessReport& rep, const AxisSquare& q, Point x, real scale,
                        real b1, real b2, real b3, real b4, const SegmentGrid& bd_grid,
                        bool containment_ok, real slack) {
  rep.witness = q;
  real d_bd = dist_square_to_grid(q, bd_grid);
  real d_x = dist_point_segments(x, q.boundary());
  rep.realized["side_over_xij"] = q.side / scale;
  rep.realized["dist_boundary_over_xij"] = d_bd / scale;
  rep.realized["dist_query_over_xij"] = d_x / scale;
  rep.bounds["side_over_xij"] = {b1, b2};
  rep.bounds["dist_boundary_over_xij"] = {b3, b4};
  rep.bounds["dist_query_over_xij"] = {0, b4};
  bool chain = d_bd <= d_x * (1 + slack);
  rep.satisfied = containment_ok && chain && rep.within_bounds(slack);
  if (!containment_ok) rep.note = "containment check failed";
}

}  // namespace

// ---------------------------------------------------------------------------
// Classical certifier
// ---------------------------------------------------------------------------

namespace {

class ClassicalCertifier final : public Certifier {
public:
  ClassicalCertifier(const ClassicalParams& params, int j, real eps)
      : Certifier(eps), params_(params), level_(params, j), j_(j) {
    if (j < 1) throw std::invalid_argument("certifier: level must be >= 1");
    bd_.inner_bd = level_.inner_edges();
    bd_.outer_bd = level_.outer_edges();
    bd_.inner_grid = SegmentGrid(bd_.inner_bd);
    bd_.outer_grid = SegmentGrid(bd_.outer_bd);
    // triangle-side grids for nearest-cell lookup
    for (const Triangle& t : level_.new_inner_triangles())
      for (const Segment& s : t.sides()) inner_tri_sides_.push_back(s);
    for (const Triangle& t : level_.carved_outer_triangles())
      for (const Segment& s : t.sides()) outer_tri_sides_.push_back(s);
    inner_tri_grid_ = SegmentGrid(inner_tri_sides_);
    outer_tri_grid_ = SegmentGrid(outer_tri_sides_);
  }

  Family family() const override { return Family::Classical; }
  int level() const override { return j_; }
  real xi() const override { return params_.xi(); }
  ThicknessConstants proof_constants() const override {
    return classical_proof_constants(params_);
  }

  Cond1Report check_cond1(real c, std::size_t extra_samples, std::uint64_t seed) const override;
  WitnessReport inner_cube_witness(Point x_minus) const override;
  WitnessReport exterior_cube_witness(Point x_plus) const override;
  WitnessReport ethick_witness(const AxisSquare& qi, const QueryConstants& qc) const override;
  WitnessReport ithick_witness(const AxisSquare& qe, const QueryConstants& qc) const override;

  Point random_inner_boundary_point(SplitMix64& rng) const override {
    return random_point_on_segments(bd_.inner_bd, rng);
  }
  Point random_outer_boundary_point(SplitMix64& rng) const override {
    return random_point_on_segments(bd_.outer_bd, rng);
  }
  Point random_ball_center(SplitMix64& rng) const override {
    const auto& v = level_.inner().vertices();
    return v[std::size_t(rng.below(v.size()))];
  }

  const std::vector<Segment>& inner_boundary_segments() const override { return bd_.inner_bd; }
  const std::vector<Segment>& outer_boundary_segments() const override { return bd_.outer_bd; }
  const std::vector<Segment>& porosity_boundary_segments() const override {
    return bd_.inner_bd;
  }
  const SegmentGrid& porosity_grid() const override { return bd_.inner_grid; }

  real region_area_in_square(const AxisSquare& q) const override {
    return clip_polygon_to_square(level_.inner(), q);
  }

private:
  ClassicalParams params_;
  ClassicalLevel level_;
  int j_;
  BoundaryContext bd_;
  std::vector<Segment> inner_tri_sides_, outer_tri_sides_;
  SegmentGrid inner_tri_grid_, outer_tri_grid_;

  real scale() const { return std::pow(params_.xi(), j_); }

  // Deterministic nearest triangle: min (boundary distance, index).
  std::size_t nearest_triangle(Point x, const std::vector<Triangle>& tris,
                               const SegmentGrid& side_grid) const;
  WitnessReport cube_witness_impl(Point x, bool interior) const;
  std::optional<AxisSquare> fallback_search(Point x, bool interior, real b1, real b2,
                                            real b3, real b4) const;
  bool square_clear_of_outer(const AxisSquare& q) const;
};

std::size_t ClassicalCertifier::nearest_triangle(Point x, const std::vector<Triangle>& tris,
                                                 const SegmentGrid& side_grid) const {
  real pad = scale();
  real best = std::numeric_limits<real>::infinity();
  std::size_t arg = 0;
  for (int round = 0; round < 40; ++round) {
    auto near = side_grid.segments_near_box(x, x, pad);
    if (!near.empty()) {
      std::sort(near.begin(), near.end());
      for (std::size_t sk : near) {
        std::size_t ti = sk / 3;
        real d = tris[ti].boundary_distance(x);
        if (d < best - real(1e-15) || (std::abs(d - best) <= real(1e-15) && ti < arg)) {
          best = d;
          arg = ti;
        }
      }
      if (best <= pad) return arg;
    }
    pad *= 4;
  }
  return arg;
}

WitnessReport ClassicalCertifier::cube_witness_impl(Point x, bool interior) const {
  const ThicknessConstants k = proof_constants();
  real scl = scale();
  WitnessReport rep;
  rep.query_kind = interior ? "inner_cube" : "exterior_cube";
  rep.level = j_;
  rep.query_point = x;

  const auto& tris = interior ? level_.new_inner_triangles() : level_.carved_outer_triangles();
  const SegmentGrid& side_grid = interior ? inner_tri_grid_ : outer_tri_grid_;
  const SegmentGrid& bd_grid = interior ? bd_.inner_grid : bd_.outer_grid;
  real b1 = interior ? k.c1m : k.c1p;
  real b2 = interior ? k.c2m : k.c2p;
  real b3 = interior ? k.c3m : k.c3p;
  real b4 = interior ? k.c4m : k.c4p;
  // Exterior carved triangles carry legs xi^(j+1/2); the jump from x+ to the
  // triangle is bounded by that leg length.
  real jump_allow = interior ? scl : scl * std::sqrt(params_.xi());

  std::size_t ti = nearest_triangle(x, tris, side_grid);
  const Triangle& t = tris[ti];
  bool near_enough = t.boundary_distance(x) <= jump_allow * (1 + real(1e-9));

  Point center = t.incenter();
  AxisSquare q = square_at(center, b1 * scl);
  // Containment argument: the cube sits in the convex cell (a construction
  // triangle on the correct side of the boundary), and the realized distance
  // check below certifies positive clearance from the relevant boundary.
  bool contained = true;
  for (Point c : q.corners()) contained = contained && t.contains(c, real(0));
  if (near_enough && contained) {
    finish_cube_report(rep, q, x, scl, b1, b2, b3, b4, bd_grid, true, eps());
    if (rep.satisfied) return rep;
  }
  // Proof-following construction failed tolerance; deterministic grid search.
  auto found = fallback_search(x, interior, b1, b2, b3, b4);
  if (found) {
    bool ok = interior ? square_inside_region(*found, level_.inner(), Tolerance{})
                       : square_clear_of_outer(*found);
    finish_cube_report(rep, *found, x, scl, b1, b2, b3, b4, bd_grid, ok, eps());
    rep.note = "fallback grid search";
    return rep;
  }
  rep.satisfied = false;
  rep.note = "no witness found within fallback budget";
  return rep;
}

std::optional<AxisSquare> ClassicalCertifier::fallback_search(Point x, bool interior,
                                                              real b1, real b2, real b3,
                                                              real b4) const {
  real scl = scale();
  real pitch = scl / 16;
  std::array<real, 3> side_candidates{b1 * scl, (b1 + b2) / 2 * scl, b2 * scl};
  const SegmentGrid& bd_grid = interior ? bd_.inner_grid : bd_.outer_grid;
  long reach = long(std::ceil(double(b4))) * 16 + 1;
  for (long iy = -reach; iy <= reach; ++iy)
    for (long ix = -reach; ix <= reach; ++ix) {
      Point c{x.x + real(ix) * pitch, x.y + real(iy) * pitch};
      for (real side : side_candidates) {
        AxisSquare q = square_at(c, side);
        bool ok = interior ? square_inside_region(q, level_.inner(), Tolerance{})
                           : square_clear_of_outer(q);
        if (!ok) continue;
        real d_bd = dist_square_to_grid(q, bd_grid);
        real d_x = dist_point_segments(x, q.boundary());
        if (in_interval(d_bd / scl, b3, b4, real(1e-9)) &&
            in_interval(d_x / scl, 0, b4, real(1e-9)) && d_bd <= d_x * (1 + real(1e-9)))
          return q;
      }
    }
  return std::nullopt;
}

bool ClassicalCertifier::square_clear_of_outer(const AxisSquare& q) const {
  for (Point c : q.corners())
    if (point_in_polygon(c, level_.outer(), Tolerance{}) != Containment::Outside)
      return false;
  // No outer-boundary edge may cross or graze the square.
  auto near = bd_.outer_grid.segments_near_box(
      q.min_corner, {q.min_corner.x + q.side, q.min_corner.y + q.side}, kDefaultEps);
  auto qb = q.boundary();
  for (std::size_t k : near) {
    const Segment& e = bd_.outer_grid.segments()[k];
    if (q.contains(e.a, -kDefaultEps)) return false;
    for (const Segment& side : qb)
      if (dist_segment_segment(e, side) <= kDefaultEps) return false;
  }
  return true;
}

Cond1Report ClassicalCertifier::check_cond1(real c, std::size_t extra_samples,
                                            std::uint64_t seed) const {
  const auto& cells = level_.collar_cells();
  if (cells.empty()) throw std::invalid_argument("check_cond1: empty collar");
  real scl = scale();
  std::vector<real> worst_in(cells.size(), 0), worst_out(cells.size(), 0);
  parallel_for(cells.size(), [&](std::size_t ci) {
    const Triangle& t = cells[ci];
    real wi = 0, wo = 0;
    auto eval = [&](Point p) {
      wi = std::max(wi, bd_.inner_grid.nearest_distance(p));
      wo = std::max(wo, bd_.outer_grid.nearest_distance(p));
    };
    eval(t.a);
    eval(t.b);
    eval(t.c);
    for (std::size_t gu = 1; gu <= 7; ++gu)
      for (std::size_t gv = 1; gv <= 7 && gu + gv <= 8; ++gv) {
        real u = real(gu) / 9, v = real(gv) / 9;
        eval({t.a.x + u * (t.b.x - t.a.x) + v * (t.c.x - t.a.x),
              t.a.y + u * (t.b.y - t.a.y) + v * (t.c.y - t.a.y)});
      }
    worst_in[ci] = wi;
    worst_out[ci] = wo;
  });
  Cond1Report rep;
  rep.level = j_;
  rep.c = c;
  rep.samples = cells.size() * (3 + 28);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    rep.max_inner_ratio = std::max(rep.max_inner_ratio, worst_in[i] / scl);
    rep.max_outer_ratio = std::max(rep.max_outer_ratio, worst_out[i] / scl);
  }
  SplitMix64 rng(seed);
  for (std::size_t s = 0; s < extra_samples; ++s) {
    const Triangle& t = cells[std::size_t(rng.below(cells.size()))];
    real u = real(rng.uniform01()), v = real(rng.uniform01()) * (1 - u);
    Point p{t.a.x + u * (t.b.x - t.a.x) + v * (t.c.x - t.a.x),
            t.a.y + u * (t.b.y - t.a.y) + v * (t.c.y - t.a.y)};
    rep.max_inner_ratio = std::max(rep.max_inner_ratio, bd_.inner_grid.nearest_distance(p) / scl);
    rep.max_outer_ratio = std::max(rep.max_outer_ratio, bd_.outer_grid.nearest_distance(p) / scl);
    ++rep.samples;
  }
  rep.satisfied = rep.max_inner_ratio <= c * (1 + eps()) &&
                  rep.max_outer_ratio <= c * (1 + eps());
  return rep;
}

WitnessReport ClassicalCertifier::inner_cube_witness(Point x) const {
  return cube_witness_impl(x, true);
}

WitnessReport ClassicalCertifier::exterior_cube_witness(Point x) const {
  return cube_witness_impl(x, false);
}

WitnessReport ClassicalCertifier::ethick_witness(const AxisSquare& qi,
                                                 const QueryConstants& qc) const {
  real scl = scale();
  real l_ratio = qi.side / scl;
  real d_in = dist_square_to_grid(qi, bd_.inner_grid) / scl;
  if (!in_interval(l_ratio, qc.c1, qc.c2, real(1e-9)) ||
      !in_interval(d_in, qc.c3, qc.c4, real(1e-9)))
    throw std::invalid_argument("ethick_witness: query cube violates precondition");

  const ThicknessConstants k = proof_constants();
  Point x = closest_boundary_point_to_square(qi, bd_.inner_grid);
  Point xplus = closest_point_on_segments(x, bd_.outer_bd);
  WitnessReport rep = exterior_cube_witness(xplus);
  rep.query_kind = "ethick";
  rep.query_cube = qi;
  rep.query_point = x;
  rep.realized["jump_over_xij"] = dist(x, xplus) / scl;
  rep.bounds["jump_over_xij"] = {0, k.c};
  if (rep.witness) {
    real c8 = qc.c4 + k.c + k.c4p;
    real sep = dist_polyline_polyline(qi.boundary(), rep.witness->boundary()) / scl;
    rep.realized["dist_qi_qe_over_xij"] = sep;
    rep.bounds["dist_qi_qe_over_xij"] = {0, c8};
    real d_qe_inner = dist_square_to_grid(*rep.witness, bd_.inner_grid) / scl;
    rep.realized["dist_qe_inner_over_xij"] = d_qe_inner;
    rep.bounds["dist_qe_inner_over_xij"] = {k.c3p, c8};
    rep.satisfied = rep.satisfied && rep.within_bounds(eps());
  }
  return rep;
}

WitnessReport ClassicalCertifier::ithick_witness(const AxisSquare& qe,
                                                 const QueryConstants& qc) const {
  real scl = scale();
  real l_ratio = qe.side / scl;
  real d_in = dist_square_to_grid(qe, bd_.inner_grid) / scl;
  for (Point c : qe.corners())
    if (point_in_polygon(c, level_.inner(), Tolerance{}) != Containment::Outside)
      throw std::invalid_argument("ithick_witness: query cube not exterior");
  if (!in_interval(l_ratio, qc.c1, qc.c2, real(1e-9)) ||
      !in_interval(d_in, qc.c3, qc.c4, real(1e-9)))
    throw std::invalid_argument("ithick_witness: query cube violates precondition");

  const ThicknessConstants k = proof_constants();
  Point xminus = closest_boundary_point_to_square(qe, bd_.inner_grid);
  WitnessReport rep = inner_cube_witness(xminus);
  rep.query_kind = "ithick";
  rep.query_cube = qe;
  if (rep.witness) {
    real c8 = qc.c4 + k.c + k.c4m;
    real sep = dist_polyline_polyline(qe.boundary(), rep.witness->boundary()) / scl;
    rep.realized["dist_qe_qi_over_xij"] = sep;
    rep.bounds["dist_qe_qi_over_xij"] = {0, c8};
    rep.satisfied = rep.satisfied && rep.within_bounds(eps());
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Square certifier
// ---------------------------------------------------------------------------

class SquareCertifier final : public Certifier {
public:
  SquareCertifier(int j, real eps) : Certifier(eps), level_(j), j_(j) {
    if (j < 1) throw std::invalid_argument("certifier: level must be >= 1");
  }

  Family family() const override { return Family::Square; }
  int level() const override { return j_; }
  real xi() const override { return real(0.25); }
  ThicknessConstants proof_constants() const override { return square_proof_constants(); }

  Cond1Report check_cond1(real c, std::size_t extra_samples, std::uint64_t seed) const override;
  WitnessReport inner_cube_witness(Point x_minus) const override;
  WitnessReport exterior_cube_witness(Point x_plus) const override;
  WitnessReport ethick_witness(const AxisSquare& qi, const QueryConstants& qc) const override;
  WitnessReport ithick_witness(const AxisSquare& qe, const QueryConstants& qc) const override;

  Point random_inner_boundary_point(SplitMix64& rng) const override {
    return random_point_on_segments(bd().inner_bd, rng);
  }
  Point random_outer_boundary_point(SplitMix64& rng) const override {
    return random_point_on_segments(bd().outer_bd, rng);
  }
  Point random_ball_center(SplitMix64& rng) const override {
    const auto& loop = level_.loop();
    auto v = loop[std::size_t(rng.below(loop.size()))];
    return {real(v.x) * level_.unit(), real(v.y) * level_.unit()};
  }

  const std::vector<Segment>& inner_boundary_segments() const override { return bd().inner_bd; }
  const std::vector<Segment>& outer_boundary_segments() const override { return bd().outer_bd; }
  const std::vector<Segment>& porosity_boundary_segments() const override {
    ensure_prefractal();
    return prefractal_bd_;
  }
  const SegmentGrid& porosity_grid() const override {
    ensure_prefractal();
    return prefractal_grid_;
  }

  real region_area_in_square(const AxisSquare& q) const override {
    Point hi{q.min_corner.x + q.side, q.min_corner.y + q.side};
    return level_.inner_region_area_in_rect(q.min_corner, hi);
  }

private:
  SquareLevel level_;
  int j_;
  // The diamond boundaries and their grids are costly at deep levels; build
  // them only when a caller actually needs witnesses or boundary samples.
  mutable BoundaryContext bd_;
  mutable std::once_flag bd_once_;
  mutable std::vector<Segment> prefractal_bd_;
  mutable SegmentGrid prefractal_grid_;
  mutable std::once_flag prefractal_once_;

  const BoundaryContext& bd() const {
    std::call_once(bd_once_, [this] {
      bd_.inner_bd = level_.inner_boundary();
      bd_.outer_bd = level_.outer_boundary();
      bd_.inner_grid = SegmentGrid(bd_.inner_bd);
      bd_.outer_grid = SegmentGrid(bd_.outer_bd);
    });
    return bd_;
  }
  void ensure_prefractal() const {
    std::call_once(prefractal_once_, [this] {
      prefractal_bd_ = level_.boundary_segments();
      prefractal_grid_ = SegmentGrid(prefractal_bd_);
    });
  }

  real scale() const { return level_.unit(); }  // xi^j with xi = 1/4

  WitnessReport diamond_witness(Point x, bool interior) const;
};

WitnessReport SquareCertifier::diamond_witness(Point x, bool interior) const {
  const ThicknessConstants k = square_proof_constants();
  real scl = scale();
  WitnessReport rep;
  rep.query_kind = interior ? "inner_cube" : "exterior_cube";
  rep.level = j_;
  rep.query_point = x;

  const BoundaryContext& B = bd();
  const auto& sides = interior ? B.inner_bd : B.outer_bd;
  const SegmentGrid& bd_grid = interior ? B.inner_grid : B.outer_grid;
  // Exposed side nearest the query, deterministic by index.
  real best = std::numeric_limits<real>::infinity();
  std::size_t arg = sides.size();
  real pad = scl;
  for (int round = 0; round < 40 && arg == sides.size(); ++round) {
    auto near = bd_grid.segments_near_box(x, x, pad);
    std::sort(near.begin(), near.end());
    for (std::size_t sk : near) {
      real d = dist_point_segment(x, sides[sk]);
      if (d < best - real(1e-15)) {
        best = d;
        arg = sk;
      }
    }
    if (best > pad) arg = sides.size();  // a closer side may exist outside window
    pad *= 4;
  }
  if (arg == sides.size()) {
    rep.note = "no exposed side found";
    return rep;
  }

  IVec owner = interior ? level_.inner_boundary_owner(arg) : level_.outer_boundary_owner(arg);
  IVec target = owner;
  if (!interior) {
    // Hop across the exposed side to the absent diamond.
    const Segment& s = sides[arg];
    Point g = s.a, d = s.b;
    // endpoints: one grid point (even,even), one dual point (odd,odd); the
    // two centers sharing the side are g + (dx,0) and g + (0,dy).
    Point gp = g, dp = d;
    IVec gi{(long long)std::llround(double(gp.x * 2 * real(level_.scale())))
            , (long long)std::llround(double(gp.y * 2 * real(level_.scale())))};
    IVec di{(long long)std::llround(double(dp.x * 2 * real(level_.scale())))
            , (long long)std::llround(double(dp.y * 2 * real(level_.scale())))};
    if ((gi.x & 1) != 0) std::swap(gi, di);  // make gi the grid point
    IVec cand1{gi.x + (di.x - gi.x), gi.y};
    IVec cand2{gi.x, gi.y + (di.y - gi.y)};
    target = (cand1 == owner) ? cand2 : cand1;
  }
  Point center = level_.to_real(target);
  AxisSquare q = square_at(center, k.c1m * scl);

  bool contained;
  if (interior) {
    // Corners sit at center +/- l/8, strictly inside the owning diamond.
    contained = true;
    for (Point c : q.corners()) {
      real l1 = std::abs(c.x - center.x) + std::abs(c.y - center.y);
      contained = contained && l1 < scl / 2;
    }
    contained = contained && level_.point_in_inner(target);
  } else {
    contained = !level_.point_in_outer(target);
  }
  real b1 = interior ? k.c1m : k.c1p;
  real b2 = interior ? k.c2m : k.c2p;
  real b3 = interior ? k.c3m : k.c3p;
  real b4 = interior ? k.c4m : k.c4p;
  finish_cube_report(rep, q, x, scl, b1, b2, b3, b4, bd_grid, contained, eps());
  return rep;
}

WitnessReport SquareCertifier::inner_cube_witness(Point x) const {
  return diamond_witness(x, true);
}

WitnessReport SquareCertifier::exterior_cube_witness(Point x) const {
  return diamond_witness(x, false);
}

Cond1Report SquareCertifier::check_cond1(real c, std::size_t extra_samples,
                                         std::uint64_t seed) const {
  std::size_t n = level_.collar_cell_count();
  if (n == 0) throw std::invalid_argument("check_cond1: empty collar");
  real scl = scale();
  const BoundaryContext& B = bd();
  std::vector<real> worst_in(n, 0), worst_out(n, 0);
  parallel_for(n, [&](std::size_t ci) {
    auto quad = level_.collar_cell(ci);
    real wi = 0, wo = 0;
    auto eval = [&](Point p) {
      wi = std::max(wi, B.inner_grid.nearest_distance(p));
      wo = std::max(wo, B.outer_grid.nearest_distance(p));
    };
    for (Point p : quad) eval(p);
    for (int gu = 1; gu <= 7; ++gu)
      for (int gv = 1; gv <= 7; ++gv) {
        real u = real(gu) / 8, v = real(gv) / 8;
        Point p = quad[0] * ((1 - u) * (1 - v)) + quad[1] * (u * (1 - v)) +
                  quad[2] * (u * v) + quad[3] * ((1 - u) * v);
        eval(p);
      }
    worst_in[ci] = wi;
    worst_out[ci] = wo;
  });
  Cond1Report rep;
  rep.level = j_;
  rep.c = c;
  rep.samples = n * (4 + 49);
  for (std::size_t i = 0; i < n; ++i) {
    rep.max_inner_ratio = std::max(rep.max_inner_ratio, worst_in[i] / scl);
    rep.max_outer_ratio = std::max(rep.max_outer_ratio, worst_out[i] / scl);
  }
  SplitMix64 rng(seed);
  for (std::size_t s = 0; s < extra_samples; ++s) {
    auto quad = level_.collar_cell(std::size_t(rng.below(n)));
    real u = real(rng.uniform01()), v = real(rng.uniform01());
    Point p = quad[0] * ((1 - u) * (1 - v)) + quad[1] * (u * (1 - v)) + quad[2] * (u * v) +
              quad[3] * ((1 - u) * v);
    rep.max_inner_ratio = std::max(rep.max_inner_ratio, B.inner_grid.nearest_distance(p) / scl);
    rep.max_outer_ratio = std::max(rep.max_outer_ratio, B.outer_grid.nearest_distance(p) / scl);
    ++rep.samples;
  }
  rep.satisfied = rep.max_inner_ratio <= c * (1 + eps()) &&
                  rep.max_outer_ratio <= c * (1 + eps());
  return rep;
}

WitnessReport SquareCertifier::ethick_witness(const AxisSquare& qi,
                                              const QueryConstants& qc) const {
  const BoundaryContext& B = bd();
  real scl = scale();
  real l_ratio = qi.side / scl;
  real d_in = dist_square_to_grid(qi, B.inner_grid) / scl;
  if (!in_interval(l_ratio, qc.c1, qc.c2, real(1e-9)) ||
      !in_interval(d_in, qc.c3, qc.c4, real(1e-9)))
    throw std::invalid_argument("ethick_witness: query cube violates precondition");
  const ThicknessConstants k = square_proof_constants();
  Point x = closest_boundary_point_to_square(qi, B.inner_grid);
  Point xplus = closest_point_on_segments(x, B.outer_bd);
  WitnessReport rep = exterior_cube_witness(xplus);
  rep.query_kind = "ethick";
  rep.query_cube = qi;
  rep.query_point = x;
  rep.realized["jump_over_xij"] = dist(x, xplus) / scl;
  rep.bounds["jump_over_xij"] = {0, k.c};
  if (rep.witness) {
    real c8 = qc.c4 + k.c + k.c4p;
    real sep = dist_polyline_polyline(qi.boundary(), rep.witness->boundary()) / scl;
    rep.realized["dist_qi_qe_over_xij"] = sep;
    rep.bounds["dist_qi_qe_over_xij"] = {0, c8};
    real d_qe_inner = dist_square_to_grid(*rep.witness, B.inner_grid) / scl;
    rep.realized["dist_qe_inner_over_xij"] = d_qe_inner;
    rep.bounds["dist_qe_inner_over_xij"] = {k.c3p, c8};
    rep.satisfied = rep.satisfied && rep.within_bounds(eps());
  }
  return rep;
}

WitnessReport SquareCertifier::ithick_witness(const AxisSquare& qe,
                                              const QueryConstants& qc) const {
  const BoundaryContext& B = bd();
  real scl = scale();
  real l_ratio = qe.side / scl;
  real d_in = dist_square_to_grid(qe, B.inner_grid) / scl;
  if (!in_interval(l_ratio, qc.c1, qc.c2, real(1e-9)) ||
      !in_interval(d_in, qc.c3, qc.c4, real(1e-9)))
    throw std::invalid_argument("ithick_witness: query cube violates precondition");
  const ThicknessConstants k = square_proof_constants();
  Point xminus = closest_boundary_point_to_square(qe, B.inner_grid);
  WitnessReport rep = inner_cube_witness(xminus);
  rep.query_kind = "ithick";
  rep.query_cube = qe;
  if (rep.witness) {
    real c8 = qc.c4 + k.c + k.c4m;
    real sep = dist_polyline_polyline(qe.boundary(), rep.witness->boundary()) / scl;
    rep.realized["dist_qe_qi_over_xij"] = sep;
    rep.bounds["dist_qe_qi_over_xij"] = {0, c8};
    rep.satisfied = rep.satisfied && rep.within_bounds(eps());
  }
  return rep;
}

}  // namespace

std::unique_ptr<Certifier> make_certifier(Family family, real beta, int j, real eps) {
  if (!(eps > 0)) throw std::invalid_argument("make_certifier: eps must be > 0");
  if (family == Family::Classical)
    return std::make_unique<ClassicalCertifier>(ClassicalParams{beta}, j, eps);
  return std::make_unique<SquareCertifier>(j, eps);
}

}  // namespace fractk
