#include "fractk/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_set>

#include "fractk/square.hpp"

namespace fractk {

namespace {

// Cell index of coordinate v at pitch r; values on a gridline go to the
// lower cell.
long long cell_index(real v, real r) {
  real q = v / r;
  real rounded = std::nearbyint(q);
  if (std::abs(q - rounded) <= real(1e-9)) return (long long)rounded - 1;
  return (long long)std::floor(q);
}

}  // namespace

std::size_t box_count(std::span<const Segment> segments, real r) {
  if (!(r > 0)) throw std::invalid_argument("box_count: r must be > 0");
  std::unordered_set<long long> cells;
  std::vector<real> ts;
  for (const Segment& s : segments) {
    real dx = s.b.x - s.a.x, dy = s.b.y - s.a.y;
    ts.clear();
    ts.push_back(0);
    ts.push_back(1);
    auto add_axis = [&](real a, real d) {
      if (d == real(0)) return;
      real lo = std::min(a, a + d), hi = std::max(a, a + d);
      long long k0 = (long long)std::ceil(double(lo / r));
      long long k1 = (long long)std::floor(double(hi / r));
      for (long long k = k0; k <= k1; ++k) {
        real t = (real(k) * r - a) / d;
        if (t > 0 && t < 1) ts.push_back(t);
      }
    };
    add_axis(s.a.x, dx);
    add_axis(s.a.y, dy);
    std::sort(ts.begin(), ts.end());
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
      if (!(ts[i + 1] > ts[i])) continue;  // zero-length touch
      real tm = (ts[i] + ts[i + 1]) / 2;
      Point p = s.at(tm);
      long long ix = cell_index(p.x, r);
      long long iy = cell_index(p.y, r);
      cells.insert(ix * 0x100000ll * 0x100000ll + iy);
    }
  }
  return cells.size();
}

DimensionFit fit_dimension(const BoxCountSeries& series, int drop_low, int drop_high) {
  const auto& e = series.entries;
  for (std::size_t i = 0; i + 1 < e.size(); ++i) {
    if (!(e[i].first > e[i + 1].first))
      throw std::invalid_argument("fit_dimension: r must be strictly decreasing");
    if (e[i].second > e[i + 1].second)
      throw std::invalid_argument("fit_dimension: counts must be nondecreasing");
  }
  if (drop_low < 0 || drop_high < 0)
    throw std::invalid_argument("fit_dimension: negative drop");
  std::size_t total = e.size();
  if (total < std::size_t(drop_low + drop_high) + 3)
    throw std::invalid_argument("fit_dimension: need at least 3 usable entries");
  std::size_t first = std::size_t(drop_high);       // entries are coarse-to-fine
  std::size_t last = total - std::size_t(drop_low); // exclusive
  real sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = last - first;
  for (std::size_t i = first; i < last; ++i) {
    real x = std::log(real(1) / e[i].first);
    real y = std::log(real(e[i].second));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  real denom = real(n) * sxx - sx * sx;
  DimensionFit fit;
  fit.slope = (real(n) * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / real(n);
  real ss = 0;
  for (std::size_t i = first; i < last; ++i) {
    real x = std::log(real(1) / e[i].first);
    real y = std::log(real(e[i].second));
    real d = y - (fit.intercept + fit.slope * x);
    ss += d * d;
  }
  fit.residual = std::sqrt(ss / real(n));
  fit.r_min = e[last - 1].first;
  fit.r_max = e[first].first;
  return fit;
}

RingCheckResult dset_ring_check(std::span<const Segment> segments, real xi, real d,
                                std::span<const Point> centers,
                                std::span<const real> radii) {
  if (segments.empty()) throw std::invalid_argument("dset_ring_check: empty boundary");
  real edge_len = segments[0].length();
  real resolution = edge_len / (xi * xi);
  for (real r : radii)
    if (!(r > resolution))
      throw std::invalid_argument("dset_ring_check: radius below level resolution");
  real edge_measure = std::pow(edge_len, d);
  RingCheckResult out{std::numeric_limits<real>::infinity(), 0};
  for (Point c : centers) {
    for (real r : radii) {
      std::size_t hits = 0;
      for (const Segment& s : segments)
        if (dist_point_segment(c, s) <= r) ++hits;
      real ratio = real(hits) * edge_measure / std::pow(r, d);
      out.c1_hat = std::min(out.c1_hat, ratio);
      out.c2_hat = std::max(out.c2_hat, ratio);
    }
  }
  return out;
}

namespace {

std::vector<Segment> family_boundary(Family family, real beta, int j) {
  if (family == Family::Classical) {
    ClassicalParams p{beta};
    return inner_prefractal(p, j).edges();
  }
  return SquareLevel(j).boundary_segments();
}

}  // namespace

std::vector<ConvergenceRow> hausdorff_convergence(Family family, real beta, int j_max) {
  if (j_max < 0 || j_max > 8) throw std::invalid_argument("hausdorff_convergence: bad j_max");
  real xi = family == Family::Classical ? ClassicalParams{beta}.xi() : real(0.25);
  real c = family == Family::Classical ? real(1) / std::sqrt(real(2)) : real(1);
  auto reference = family_boundary(family, beta, j_max);
  std::vector<ConvergenceRow> rows;
  for (int j = 0; j <= j_max; ++j) {
    ConvergenceRow row;
    row.j = j;
    // The certified bound is c xi^j, so the sampling pitch only needs to be
    // fine relative to that row's scale.
    real spacing = std::max(std::pow(xi, j_max), std::pow(xi, j) / 8);
    if (j == j_max) {
      row.distance = 0;
      row.bound = c * std::pow(xi, j) + c * std::pow(xi, j_max) + spacing / 2;
    } else {
      auto bd = family_boundary(family, beta, j);
      auto hd = hausdorff_distance(bd, reference, spacing);
      row.distance = hd.value;
      row.bound = c * std::pow(xi, j) + c * std::pow(xi, j_max) + hd.error_bound;
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<CollarRow> collar_measure_series(Family family, real beta, int j_max) {
  if (j_max < 0 || j_max > 8) throw std::invalid_argument("collar_measure_series: bad j_max");
  std::vector<CollarRow> rows;
  for (int j = 0; j <= j_max; ++j) {
    CollarRow row;
    row.j = j;
    if (family == Family::Classical) {
      ClassicalParams p{beta};
      row.geometric =
          polygon_area(outer_prefractal(p, j)) - polygon_area(inner_prefractal(p, j));
      row.closed_form = classical_collar_area(p, j);
    } else {
      SquareLevel lv(j);
      row.geometric = lv.collar_area();
      row.closed_form = std::pow(real(2), real(1 - j));
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace fractk
