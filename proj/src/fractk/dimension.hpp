#pragma once

#include <vector>

#include "fractk/classical.hpp"
#include "fractk/family.hpp"
#include "fractk/geom.hpp"

namespace fractk {

struct BoxCountSeries {
  // r strictly decreasing, counts nondecreasing.
  std::vector<std::pair<real, std::size_t>> entries;
};

struct DimensionFit {
  real slope = 0;
  real intercept = 0;
  real residual = 0;  // rms residual of the log-log fit
  real r_min = 0, r_max = 0;
};

// Number of grid cells of pitch r (anchored at the origin, half-open cells)
// met by the segment set with positive length. A run lying exactly on a
// gridline is attributed to the lower of the two adjacent cells; zero-length
// touches do not count.
std::size_t box_count(std::span<const Segment> segments, real r);

// Least-squares slope of log(count) against log(1/r). drop_high removes
// entries from the coarse end (largest r), drop_low from the fine end.
DimensionFit fit_dimension(const BoxCountSeries& series, int drop_low, int drop_high);

struct RingCheckResult {
  real c1_hat = 0;  // min over (center, radius) of measure(B)/r^d
  real c2_hat = 0;  // max
};

// Empirical d-set ring constants: the measure of a boundary-centered ball is
// approximated by (number of level edges meeting it) * (edge length)^d.
// Radii must stay above the level resolution: r > edge_length / xi^2.
RingCheckResult dset_ring_check(std::span<const Segment> segments, real xi, real d,
                                std::span<const Point> centers, std::span<const real> radii);

struct ConvergenceRow {
  int j = 0;
  real distance = 0;     // measured d_H(boundary_j, boundary_jmax)
  real bound = 0;        // c xi^j + stand-in + sampling error
};

std::vector<ConvergenceRow> hausdorff_convergence(Family family, real beta, int j_max);

struct CollarRow {
  int j = 0;
  real geometric = 0;
  real closed_form = 0;
};

std::vector<CollarRow> collar_measure_series(Family family, real beta, int j_max);

}  // namespace fractk
