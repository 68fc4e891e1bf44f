#pragma once

#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "fractk/classical.hpp"
#include "fractk/geom.hpp"

namespace fractk {

struct IVec {
  long long x = 0, y = 0;
  friend bool operator==(IVec a, IVec b) { return a.x == b.x && a.y == b.y; }
};

// Square snowflake prefractal at level j. All coordinates are integers in
// units of l_j = 4^-j (vertex loop) or half-units (diamond centers), so cell
// bookkeeping, areas and tiling checks are exact.
class SquareLevel {
public:
  explicit SquareLevel(int j, std::size_t edge_cap = std::size_t(1) << 24);

  int level() const { return j_; }
  long long scale() const { return scale_; }  // 4^j
  real unit() const { return real(1) / real(scale_); }

  // Boundary of the non-nested prefractal: 4*8^j directed edges of length
  // one cell unit (collinear middle pairs kept distinct).
  const std::vector<IVec>& loop() const { return loop_; }
  std::size_t edge_count() const { return loop_.size(); }
  Polygon boundary_polygon() const;
  std::vector<Segment> boundary_segments() const;
  real area() const;  // exact shoelace / scale^2; equals 1

  bool cell_inside(long long ix, long long iy) const;
  std::vector<std::array<long long, 2>> cells() const;

  // Collar: one tilted square (diamond over the edge) per boundary edge.
  std::size_t collar_cell_count() const { return loop_.size(); }
  std::array<Point, 4> collar_cell(std::size_t k) const;
  real collar_area() const;  // 2^(1-j), exact by disjointness of interiors

  // Inner/outer regions as diamond complexes. A diamond sits on each grid
  // edge; present-minus means both adjacent cells are inside, present-plus
  // means at least one is. Centers are in doubled cell units.
  real inner_area() const;  // 1 - 2^-j
  real outer_area() const;  // 1 + 2^-j
  bool inner_empty() const { return j_ == 0; }

  // Exposed diamond sides of each complex, as real segments.
  const std::vector<Segment>& inner_boundary() const;
  const std::vector<Segment>& outer_boundary() const;
  // Diamond center (doubled units) owning exposed side k.
  IVec inner_boundary_owner(std::size_t k) const;
  IVec outer_boundary_owner(std::size_t k) const;

  // Membership of a point given in doubled cell units (exact).
  bool point_in_inner(IVec doubled) const;
  bool point_in_outer(IVec doubled) const;
  // Same for a point given in doubled units of a level (j + shift)
  // refinement, i.e. real = q / (2 * 4^(j+shift)); exact integer test.
  bool point_in_outer_scaled(IVec q, int shift) const;

  Point to_real(IVec doubled_units) const {
    return {real(doubled_units.x) / real(2 * scale_), real(doubled_units.y) / real(2 * scale_)};
  }

  // Exact area of the intersection of the Gamma_j cell region with an axis
  // rectangle (real unit coordinates).
  real cell_region_area_in_rect(Point lo, Point hi) const;
  // Same for the inner region Gamma_j^- (cells minus inboard collar halves).
  real inner_region_area_in_rect(Point lo, Point hi) const;

  // Offsets of the two cells adjacent to boundary edge k (cell units), inside
  // one first.
  std::pair<std::array<long long, 2>, std::array<long long, 2>> edge_cells(std::size_t k) const;

private:
  struct Row {
    // Sorted [start, end) runs of inside cells.
    std::vector<std::pair<long long, long long>> runs;
  };

  // Boundary edges bucketed into blocks of cells, so rectangle queries touch
  // only the edges near the rectangle rim.
  struct EdgeBlocks {
    long long block = 64;  // block side, in cells
    long long bw = 0, bh = 0;
    std::vector<std::vector<std::uint32_t>> ids;  // edge indices per block
  };

  int j_;
  long long scale_;
  std::vector<IVec> loop_;
  long long min_x_ = 0, min_y_ = 0, max_x_ = 0, max_y_ = 0;  // cell-bbox
  std::vector<Row> rows_;                                    // indexed by iy - min_y_
  std::size_t cell_count_ = 0;

  mutable std::vector<Segment> inner_bd_, outer_bd_;
  mutable std::vector<IVec> inner_bd_owner_, outer_bd_owner_;
  mutable EdgeBlocks blocks_;

  bool diamond_present_minus(IVec center) const;
  bool diamond_present_plus(IVec center) const;
  void build_boundaries() const;
  const EdgeBlocks& edge_blocks() const;
  real collar_triangle_clip(std::size_t k, Point lo, Point hi, bool& full) const;
  real run_overlap(long long iy, real x0, real x1) const;
};

std::array<SimilarityMap, 8> square_ifs();

// Level-j evolution of the directed edge (0,0)->(1,0) under the replacement
// rule, as a vertex path; equals the IFS iterate of that edge.
std::vector<Point> square_one_leg(int j);

// Translates of the level-j prefractal over a block of integer offsets tile:
// pairwise disjoint cell sets whose union covers the central unit square.
bool square_tiling_check(int j, const std::vector<std::array<int, 2>>& offsets);

}  // namespace fractk
