#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fractk/thickness.hpp"

using namespace fractk;

namespace {

// Brute-force ball-condition oracle on a finer grid than the library uses.
double ball_eta_oracle(std::span<const Segment> boundary, Point x, double r, int n) {
  double best = 0;
  for (int iy = -n; iy <= n; ++iy)
    for (int ix = -n; ix <= n; ++ix) {
      Point y{x.x + ix * r / n, x.y + iy * r / n};
      double off = dist(x, y);
      if (off >= r) continue;
      double d = dist_point_segments(y, boundary);
      best = std::max(best, std::min(1 - off / r, d / (2 * r)));
    }
  return best;
}

}  // namespace

TEST_CASE("proof constants") {
  ClassicalParams koch{M_PI / 6};
  auto k = classical_proof_constants(koch);
  double rho = std::sin(M_PI / 6) * std::tan(M_PI / 4 - M_PI / 12);
  CHECK(k.c == 0.5);
  CHECK(k.c1m == doctest::Approx(rho / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(k.c3m == doctest::Approx(rho / 2).epsilon(1e-15));
  CHECK(k.c4m == 2.0);
  CHECK(k.c1p == doctest::Approx(k.c1m * std::sqrt(1.0 / 3.0)).epsilon(1e-14));
  auto s = square_proof_constants();
  CHECK(s.c == 1.0);
  CHECK(s.c1m == 0.25);
  CHECK(s.c3m == doctest::Approx(0.25 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(s.c4m == 0.375);
  CHECK(s.c1p == s.c1m);
}

TEST_CASE("cond1 certification") {
  SUBCASE("classical c=1/2") {
    for (double beta : {M_PI / 3, M_PI / 6, M_PI / 20}) {
      for (int j : {1, 2, 3}) {
        auto cert = make_certifier(Family::Classical, beta, j);
        auto rep = cert->check_cond1(0.5, 1000, 7);
        CHECK(rep.satisfied);
        CHECK(rep.max_inner_ratio <= 0.5 + 1e-9);
        CHECK(rep.max_outer_ratio <= 0.5 + 1e-9);
        CHECK(rep.samples >= 1000);
      }
    }
  }
  SUBCASE("square c=1") {
    for (int j : {1, 2, 3}) {
      auto cert = make_certifier(Family::Square, 0, j);
      auto rep = cert->check_cond1(1.0, 100, 7);
      CHECK(rep.satisfied);
      CHECK(rep.max_inner_ratio <= 1.0 + 1e-9);
      CHECK(rep.max_outer_ratio <= 1.0 + 1e-9);
    }
  }
  SUBCASE("ratio zero on the boundary itself") {
    auto cert = make_certifier(Family::Classical, M_PI / 6, 2);
    const auto& bd = cert->inner_boundary_segments();
    SegmentGrid grid(bd);
    CHECK(grid.nearest_distance(bd[0].a) == 0.0);
  }
}

TEST_CASE("classical inner cube witness") {
  ClassicalParams p{M_PI / 6};
  auto cert = make_certifier(Family::Classical, M_PI / 6, 1);
  ClassicalLevel lv(p, 1);
  // x at the apex of a new triangle
  Point apex = lv.new_inner_triangles()[0].b;
  auto rep = cert->inner_cube_witness(apex);
  CHECK(rep.satisfied);
  REQUIRE(rep.witness.has_value());
  auto k = classical_proof_constants(p);
  CHECK(rep.realized.at("side_over_xij") == doctest::Approx(k.c1m).epsilon(1e-12));
  CHECK(rep.realized.at("dist_boundary_over_xij") >= k.c3m - 1e-9);
  CHECK(rep.realized.at("dist_query_over_xij") <= k.c4m + 1e-9);
  // witness square inside the inner polygon
  CHECK(square_inside_region(*rep.witness, lv.inner(), Tolerance{}));
}

TEST_CASE("classical witnesses at random boundary points") {
  for (int j : {1, 2, 3}) {
    auto cert = make_certifier(Family::Classical, M_PI / 6, j);
    SplitMix64 rng(1000 + j);
    for (int i = 0; i < 60; ++i) {
      Point xm = cert->random_inner_boundary_point(rng);
      auto rep = cert->inner_cube_witness(xm);
      CHECK(rep.satisfied);
      Point xp = cert->random_outer_boundary_point(rng);
      auto rep2 = cert->exterior_cube_witness(xp);
      CHECK(rep2.satisfied);
    }
  }
}

TEST_CASE("square witnesses at random boundary points") {
  for (int j : {1, 2, 3}) {
    auto cert = make_certifier(Family::Square, 0, j);
    SplitMix64 rng(2000 + j);
    for (int i = 0; i < 60; ++i) {
      Point xm = cert->random_inner_boundary_point(rng);
      auto rep = cert->inner_cube_witness(xm);
      CHECK(rep.satisfied);
      Point xp = cert->random_outer_boundary_point(rng);
      auto rep2 = cert->exterior_cube_witness(xp);
      CHECK(rep2.satisfied);
    }
  }
}

TEST_CASE("square witness geometry matches the construction") {
  auto cert = make_certifier(Family::Square, 0, 1);
  SplitMix64 rng(5);
  Point xm = cert->random_inner_boundary_point(rng);
  auto rep = cert->inner_cube_witness(xm);
  REQUIRE(rep.witness.has_value());
  auto k = square_proof_constants();
  double l1 = std::pow(0.25, 1);
  CHECK(rep.witness->side == doctest::Approx(k.c1m * l1).epsilon(1e-12));
  CHECK(rep.realized.at("dist_boundary_over_xij") ==
        doctest::Approx(1.0 / (4.0 * std::sqrt(2.0))).epsilon(1e-9));
  CHECK(rep.realized.at("dist_query_over_xij") <= 0.375 + 1e-9);
}

TEST_CASE("witness re-validation from raw geometry") {
  auto cert = make_certifier(Family::Classical, M_PI / 6, 2);
  SplitMix64 rng(99);
  for (int i = 0; i < 20; ++i) {
    Point xm = cert->random_inner_boundary_point(rng);
    auto rep = cert->inner_cube_witness(xm);
    REQUIRE(rep.satisfied);
    double scl = std::pow(1.0 / 3.0, 2);
    double d_bd =
        dist_polyline_polyline(rep.witness->boundary(), cert->inner_boundary_segments());
    CHECK(d_bd / scl ==
          doctest::Approx(rep.realized.at("dist_boundary_over_xij")).epsilon(1e-9));
    double d_x = dist_point_segments(xm, rep.witness->boundary());
    CHECK(d_x / scl == doctest::Approx(rep.realized.at("dist_query_over_xij")).epsilon(1e-9));
  }
}

TEST_CASE("monotone consistency under looser bounds") {
  auto cert = make_certifier(Family::Square, 0, 2);
  SplitMix64 rng(123);
  for (int i = 0; i < 20; ++i) {
    auto rep = cert->inner_cube_witness(cert->random_inner_boundary_point(rng));
    if (!rep.satisfied) continue;
    WitnessReport loose = rep;
    for (auto& [key, iv] : loose.bounds) {
      iv.first *= 0.5;
      iv.second *= 2.0;
    }
    CHECK(loose.within_bounds());
  }
}

TEST_CASE("translation equivariance of the witness construction") {
  // Certify a translated copy by translating queries; the witness of the
  // translated query is the translated witness.
  ClassicalParams p{M_PI / 6};
  auto cert = make_certifier(Family::Classical, M_PI / 6, 2);
  SplitMix64 rng(4);
  Point xm = cert->random_inner_boundary_point(rng);
  auto rep = cert->inner_cube_witness(xm);
  REQUIRE(rep.satisfied);
  // The construction is deterministic in local geometry only, so translating
  // the whole level is equivalent to translating the query and witness.
  Point shift{5, 7};
  ClassicalLevel shifted(p, 2);
  Polygon moved = shifted.inner().translated(shift);
  AxisSquare moved_witness{rep.witness->min_corner + shift, rep.witness->side};
  CHECK(square_inside_region(moved_witness, moved, Tolerance{}));
  double d1 = dist_point_segments(xm, rep.witness->boundary());
  double d2 = dist_point_segments(xm + shift, moved_witness.boundary());
  CHECK(d1 == doctest::Approx(d2).epsilon(1e-12));
}

TEST_CASE("dihedral equivariance of the witness construction") {
  SUBCASE("classical: the chosen cell commutes with the 3-fold rotation") {
    // The final cube is axis-aligned by definition, so only the cell stage
    // (nearest construction triangle and its incenter) can commute with a
    // 120-degree rotation; it does, and satisfaction is preserved.
    auto cert = make_certifier(Family::Classical, M_PI / 6, 2);
    Point centroid{0.5, 0.5 * std::sqrt(3.0) / 3.0};
    auto rot120 = [&](Point q) { return centroid + rotate(q - centroid, 2.0 * M_PI / 3.0); };
    SplitMix64 rng(21);
    for (int i = 0; i < 15; ++i) {
      Point x = cert->random_inner_boundary_point(rng);
      auto a = cert->inner_cube_witness(x);
      auto b = cert->inner_cube_witness(rot120(x));
      REQUIRE(a.satisfied);
      REQUIRE(b.satisfied);
      CHECK(dist(rot120(a.witness->center()), b.witness->center()) < 1e-9);
      CHECK(a.witness->side == doctest::Approx(b.witness->side).epsilon(1e-12));
      // side-to-boundary clearance is restored by the equilateral cell shape
      CHECK(a.realized.at("dist_boundary_over_xij") ==
            doctest::Approx(b.realized.at("dist_boundary_over_xij")).epsilon(1e-9));
    }
  }
  SUBCASE("square: full equivariance under the axis-preserving rotation") {
    auto cert = make_certifier(Family::Square, 0, 2);
    Point c{0.5, 0.5};
    auto rot90 = [&](Point q) { return c + rotate(q - c, M_PI / 2.0); };
    SplitMix64 rng(22);
    for (int i = 0; i < 15; ++i) {
      Point x = cert->random_inner_boundary_point(rng);
      auto a = cert->inner_cube_witness(x);
      auto b = cert->inner_cube_witness(rot90(x));
      REQUIRE(a.satisfied);
      REQUIRE(b.satisfied);
      CHECK(dist(rot90(a.witness->center()), b.witness->center()) < 1e-9);
      for (const auto& [key, val] : a.realized)
        CHECK(val == doctest::Approx(b.realized.at(key)).epsilon(1e-9));
    }
  }
}

TEST_CASE("scale consistency of realized ratios across levels") {
  // Corresponding query points on the bottom leg: x -> xi * x under the
  // origin homothety; realized ratios agree to 1e-9.
  ClassicalParams p{M_PI / 6};
  double xi = p.xi();
  auto cert2 = make_certifier(Family::Classical, M_PI / 6, 2);
  auto cert3 = make_certifier(Family::Classical, M_PI / 6, 3);
  ClassicalLevel lv2(p, 2);
  int hits = 0;
  for (std::size_t t = 0; t < lv2.new_inner_triangles().size(); ++t) {
    const Triangle& tri = lv2.new_inner_triangles()[t];
    Point apex = tri.b;
    // stay on the interior third of the bottom leg
    if (!(apex.y < 0 && apex.x > 0.1 && apex.x < 0.9 * xi)) continue;
    auto ra = cert2->inner_cube_witness(apex);
    auto rb = cert3->inner_cube_witness(apex * xi);
    REQUIRE(ra.satisfied);
    REQUIRE(rb.satisfied);
    for (const auto& [key, val] : ra.realized) {
      CHECK(val == doctest::Approx(rb.realized.at(key)).epsilon(1e-9));
    }
    ++hits;
  }
  CHECK(hits > 0);
}

TEST_CASE("ethick and ithick witnesses") {
  for (auto family : {Family::Classical, Family::Square}) {
    double beta = M_PI / 6;
    for (int j : {2, 3}) {
      auto cert = make_certifier(family, beta, j);
      auto k = cert->proof_constants();
      SplitMix64 rng(42 + j);
      int done = 0;
      for (int i = 0; i < 40 && done < 15; ++i) {
        Point xm = cert->random_inner_boundary_point(rng);
        auto inner = cert->inner_cube_witness(xm);
        if (!inner.satisfied) continue;
        QueryConstants qc{k.c1m, k.c2m, k.c3m, k.c4m};
        auto erep = cert->ethick_witness(*inner.witness, qc);
        CHECK(erep.satisfied);
        CHECK(erep.realized.at("dist_qi_qe_over_xij") <= qc.c4 + k.c + k.c4p + 1e-9);
        ++done;
      }
      CHECK(done >= 10);
    }
  }
}

TEST_CASE("ethick precondition violation") {
  auto cert = make_certifier(Family::Classical, M_PI / 6, 2);
  auto k = cert->proof_constants();
  QueryConstants qc{k.c1m, k.c2m, k.c3m, k.c4m};
  // far away cube: dist > c4 xi^j
  AxisSquare far_cube = square_at({0.5, 0.25}, k.c1m * std::pow(1.0 / 3.0, 2));
  CHECK_THROWS_AS(cert->ethick_witness(far_cube, qc), std::invalid_argument);
}

TEST_CASE("deliberately broken constants are reported unsatisfied") {
  auto cert = make_certifier(Family::Square, 0, 2);
  SplitMix64 rng(9);
  auto rep = cert->exterior_cube_witness(cert->random_outer_boundary_point(rng));
  REQUIRE(rep.satisfied);
  // doubling the lower bound c3+ must break the report
  WitnessReport broken = rep;
  auto iv = broken.bounds.at("dist_boundary_over_xij");
  broken.bounds.at("dist_boundary_over_xij") = {iv.first * 2, iv.second};
  CHECK_FALSE(broken.within_bounds());
}

TEST_CASE("ball condition witness") {
  SUBCASE("unit segment oracle cross-check") {
    std::vector<Segment> seg{{{0, 0}, {1, 0}}};
    SegmentGrid grid(seg);
    auto w = ball_condition_witness(grid, {0.5, 0}, 1.0, 5);
    CHECK(w.eta >= 0.25);
    // optimum is 1/3 at y=(0.5, 2/3)
    CHECK(w.eta <= 1.0 / 3.0 + 1e-12);
    double oracle = ball_eta_oracle(seg, {0.5, 0}, 1.0, 64);
    CHECK(w.eta == doctest::Approx(oracle).epsilon(0.05));
    // the witness disc re-validates
    CHECK(dist_point_segments(w.disc.center, seg) >= 2 * w.disc.radius - 1e-12);
    CHECK(dist(w.disc.center, Point{0.5, 0}) + w.disc.radius <= 1.0 + 1e-12);
  }
  SUBCASE("prefractal boundaries stay porous") {
    for (auto family : {Family::Classical, Family::Square}) {
      auto cert = make_certifier(family, M_PI / 6, 4);
      SplitMix64 rng(11);
      double min_eta = 1;
      for (int i = 0; i < 25; ++i) {
        Point x = cert->random_ball_center(rng);
        for (double r : {0.25, 0.0625}) {
          auto w = ball_condition_witness(cert->porosity_grid(), x, r, 4);
          min_eta = std::min(min_eta, double(w.eta));
        }
      }
      CHECK(min_eta > 0);
    }
  }
}

TEST_CASE("interior regularity scan") {
  SUBCASE("half plane proxy: unit square region, bottom edge") {
    auto cert = make_certifier(Family::Square, 0, 1);
    // Use the certifier only for its scan harness; feed centers on the
    // bottom edge of the unit square and compare with the half-cube value
    // on the level-1 inner region instead. A plain rectangle oracle:
    SquareLevel lv0(0);
    for (double l : {0.5, 0.25}) {
      double got = lv0.cell_region_area_in_rect({0.5 - l / 2, -l / 2}, {0.5 + l / 2, l / 2});
      CHECK(got == doctest::Approx(0.5 * l * l).epsilon(1e-12));
    }
    (void)cert;
  }
  SUBCASE("prefractal regions have positive ratio") {
    for (auto family : {Family::Classical, Family::Square}) {
      auto cert = make_certifier(family, M_PI / 6, 4);
      SplitMix64 rng(17);
      std::vector<Point> centers;
      for (int i = 0; i < 25; ++i) centers.push_back(cert->random_inner_boundary_point(rng));
      double xi = family == Family::Classical ? 1.0 / 3.0 : 0.25;
      std::vector<real> sides{real(xi), real(xi * xi), real(xi * xi * xi)};
      auto res = cert->interior_regularity_scan(centers, sides);
      CHECK(res.min_ratio > 0);
      CHECK(res.cubes == centers.size() * sides.size());
    }
  }
}
