#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>

#include "fractk/classical.hpp"
#include "fractk/family.hpp"
#include "fractk/square.hpp"

namespace fractk {

// Constant profile for the two cube-witness conditions and the collar
// distance condition. The minus block bounds interior cubes, the plus block
// exterior ones.
struct ThicknessConstants {
  real c = 0;
  real c1m = 0, c2m = 0, c3m = 0, c4m = 0;
  real c1p = 0, c2p = 0, c3p = 0, c4p = 0;

  ThicknessConstants scaled(real f) const {
    return {c * f, c1m / f, c2m * f, c3m / f, c4m * f, c1p / f, c2p * f, c3p / f, c4p * f};
  }
};

// Side/distance constraints an E/I-thickness query cube is checked against.
struct QueryConstants {
  real c1 = 0, c2 = 0, c3 = 0, c4 = 0;
};

struct WitnessReport {
  std::string query_kind;
  int level = 0;
  Point query_point{};
  std::optional<AxisSquare> query_cube;
  std::optional<AxisSquare> witness;
  std::optional<Disc> witness_disc;
  // realized ratio -> [declared lower, declared upper]; ratios are relative
  // to xi^j.
  std::map<std::string, real> realized;
  std::map<std::string, std::pair<real, real>> bounds;
  bool satisfied = false;
  std::string note;

  bool within_bounds(real rel_slack = real(1e-9)) const;
};

struct Cond1Report {
  int level = 0;
  real c = 0;
  std::size_t samples = 0;
  real max_inner_ratio = 0;
  real max_outer_ratio = 0;
  bool satisfied = false;
};

struct BallWitness {
  real eta = 0;
  Disc disc;
};

struct InteriorScanResult {
  real min_ratio = 0;
  Point argmin_center{};
  real argmin_side = 0;
  std::size_t cubes = 0;
};

// Largest eta on a dyadic center grid such that some disc B(y, eta r) inside
// B(x, r) stays at distance >= eta r from the boundary set. eta = 0 means no
// admissible disc was found.
BallWitness ball_condition_witness(const SegmentGrid& boundary, Point x, real r,
                                   int grid_depth = 5);

// Family-independent surface for the finite-scale thickness certification of
// one prefractal level.
class Certifier {
public:
  explicit Certifier(real eps = kDefaultEps) : eps_(eps) {}
  virtual ~Certifier() = default;

  // Absolute geometric tolerance / relative bound slack for this run.
  real eps() const { return eps_; }

  virtual Family family() const = 0;
  virtual int level() const = 0;
  virtual real xi() const = 0;
  virtual ThicknessConstants proof_constants() const = 0;

  // Collar condition: max over collar samples of dist(x, inner/outer
  // boundary) / xi^j, checked against c.
  virtual Cond1Report check_cond1(real c, std::size_t extra_samples,
                                  std::uint64_t seed) const = 0;

  virtual WitnessReport inner_cube_witness(Point x_minus) const = 0;
  virtual WitnessReport exterior_cube_witness(Point x_plus) const = 0;

  // Given an interior cube satisfying `qc` at scale xi^j, produce the
  // exterior companion; precondition violations throw.
  virtual WitnessReport ethick_witness(const AxisSquare& qi, const QueryConstants& qc) const = 0;
  virtual WitnessReport ithick_witness(const AxisSquare& qe, const QueryConstants& qc) const = 0;

  virtual Point random_inner_boundary_point(SplitMix64& rng) const = 0;
  virtual Point random_outer_boundary_point(SplitMix64& rng) const = 0;
  virtual Point random_ball_center(SplitMix64& rng) const = 0;

  // One seeded sample per equal stratum of boundary edges; spreads the
  // samples over the whole boundary so min statistics converge.
  std::vector<Point> stratified_inner_boundary_points(std::size_t count,
                                                      SplitMix64& rng) const;

  virtual const std::vector<Segment>& inner_boundary_segments() const = 0;
  virtual const std::vector<Segment>& outer_boundary_segments() const = 0;
  // Boundary the ball condition is certified on.
  virtual const std::vector<Segment>& porosity_boundary_segments() const = 0;
  virtual const SegmentGrid& porosity_grid() const = 0;

  // Area of region-cap-Q for the interior-regularity scan; the region is the
  // level-j inner prefractal.
  virtual real region_area_in_square(const AxisSquare& q) const = 0;

  InteriorScanResult interior_regularity_scan(std::span<const Point> centers,
                                              std::span<const real> sides) const;

private:
  real eps_;
};

std::unique_ptr<Certifier> make_certifier(Family family, real beta, int j,
                                          real eps = kDefaultEps);

ThicknessConstants classical_proof_constants(const ClassicalParams& p);
ThicknessConstants square_proof_constants();

}  // namespace fractk
