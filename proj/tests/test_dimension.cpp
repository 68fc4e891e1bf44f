#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fractk/dimension.hpp"
#include "fractk/square.hpp"

using namespace fractk;

TEST_CASE("box_count hand counts") {
  // horizontal unit segment off the gridlines: 4 cells at r=1/4 (the touch
  // at x=1 has zero length)
  std::vector<Segment> seg{{{0, 0.1}, {1, 0.1}}};
  CHECK(box_count(seg, 0.25) == 4);
  CHECK(box_count({}, 0.25) == 0);
  // unit square boundary at r=1/2: every edge lies on a gridline and goes to
  // the lower/left cell; hand count gives 7 distinct cells
  std::vector<Segment> sq{{{0, 0}, {1, 0}}, {{1, 0}, {1, 1}}, {{1, 1}, {0, 1}}, {{0, 1}, {0, 0}}};
  CHECK(box_count(sq, 0.5) == 7);
  // diagonal through two cells
  std::vector<Segment> diag{{{0.1, 0.1}, {0.4, 0.4}}};
  CHECK(box_count(diag, 0.25) == 2);
}

TEST_CASE("box_count refinement monotonicity") {
  ClassicalParams p{M_PI / 6};
  auto edges = inner_prefractal(p, 3).edges();
  for (double r : {0.5, 0.25, 1.0 / 3.0, 0.11}) {
    std::size_t coarse = box_count(edges, r);
    std::size_t fine = box_count(edges, r / 2);
    CHECK(coarse <= fine);
    CHECK(fine <= 4 * coarse);
  }
}

TEST_CASE("fit_dimension exact power law") {
  BoxCountSeries s;
  for (int k = 1; k <= 6; ++k)
    s.entries.push_back({std::pow(4.0, -k), std::size_t(1) << (3 * k)});  // count = (1/r)^1.5
  auto fit = fit_dimension(s, 0, 0);
  CHECK(fit.slope == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(fit.residual < 1e-12);
  auto fit2 = fit_dimension(s, 1, 1);
  CHECK(fit2.slope == doctest::Approx(1.5).epsilon(1e-12));
  CHECK_THROWS_AS(fit_dimension(s, 2, 2), std::invalid_argument);
  BoxCountSeries bad;
  bad.entries = {{0.25, 4}, {0.5, 8}};
  CHECK_THROWS_AS(fit_dimension(bad, 0, 0), std::invalid_argument);
}

TEST_CASE("koch boundary box dimension") {
  ClassicalParams p{M_PI / 6};
  auto edges = inner_prefractal(p, 7).edges();
  BoxCountSeries s;
  for (int k = 1; k <= 6; ++k) {
    double r = std::pow(3.0, -k);
    s.entries.push_back({r, box_count(edges, r)});
  }
  auto fit = fit_dimension(s, 1, 1);
  double target = std::log(4.0) / std::log(3.0);
  CHECK(std::abs(fit.slope - target) < 0.05);
}

TEST_CASE("square boundary box dimension") {
  auto edges = SquareLevel(6).boundary_segments();
  BoxCountSeries s;
  for (int k = 1; k <= 5; ++k) {
    double r = std::pow(4.0, -k);
    s.entries.push_back({r, box_count(edges, r)});
  }
  auto fit = fit_dimension(s, 1, 1);
  CHECK(std::abs(fit.slope - 1.5) < 0.05);
}

TEST_CASE("dset ring check") {
  ClassicalParams p{M_PI / 6};
  int J = 6;
  Polygon poly = inner_prefractal(p, J);
  auto edges = poly.edges();
  double d = classical_dimension(p);
  std::vector<Point> centers;
  const auto& verts = poly.vertices();
  SplitMix64 rng(31);
  for (int i = 0; i < 50; ++i) centers.push_back(verts[std::size_t(rng.below(verts.size()))]);
  std::vector<real> radii{1.0 / 3.0, 1.0 / 9.0, 1.0 / 27.0};
  auto res = dset_ring_check(edges, p.xi(), d, centers, radii);
  CHECK(res.c1_hat > 0);
  CHECK(std::isfinite(res.c2_hat));
  CHECK(res.c2_hat / res.c1_hat < 20.0);

  SUBCASE("rigid motion invariance") {
    double theta = 0.37;
    Point shift{2.5, -1.25};
    std::vector<Segment> moved;
    for (const auto& e : edges) moved.push_back({rotate(e.a, theta) + shift, rotate(e.b, theta) + shift});
    std::vector<Point> cmoved;
    for (Point c : centers) cmoved.push_back(rotate(c, theta) + shift);
    auto res2 = dset_ring_check(moved, p.xi(), d, cmoved, radii);
    CHECK(res2.c1_hat == doctest::Approx(res.c1_hat).epsilon(1e-9));
    CHECK(res2.c2_hat == doctest::Approx(res.c2_hat).epsilon(1e-9));
  }

  SUBCASE("single center full radius") {
    std::vector<Point> one{verts[0]};
    std::vector<real> r1{1.0};
    auto r = dset_ring_check(edges, p.xi(), d, one, r1);
    CHECK(r.c1_hat > 0);
  }

  SUBCASE("resolution guard") {
    std::vector<real> toofine{std::pow(p.xi(), real(J))};
    CHECK_THROWS_AS(dset_ring_check(edges, p.xi(), d, centers, toofine),
                    std::invalid_argument);
  }
}

TEST_CASE("square ring check at d = 3/2") {
  int J = 5;
  SquareLevel lv(J);
  auto edges = lv.boundary_segments();
  std::vector<Point> centers;
  SplitMix64 rng(77);
  const auto& loop = lv.loop();
  for (int i = 0; i < 30; ++i) {
    auto v = loop[std::size_t(rng.below(loop.size()))];
    centers.push_back({double(v.x) * lv.unit(), double(v.y) * lv.unit()});
  }
  std::vector<real> radii{0.25, 1.0 / 16.0};
  auto res = dset_ring_check(edges, 0.25, 1.5, centers, radii);
  CHECK(res.c1_hat > 0);
  CHECK(res.c2_hat / res.c1_hat < 20.0);
}

TEST_CASE("hausdorff convergence rows") {
  SUBCASE("classical") {
    auto rows = hausdorff_convergence(Family::Classical, M_PI / 6, 6);
    REQUIRE(rows.size() == 7);
    CHECK(rows[6].distance == 0.0);
    for (const auto& row : rows) CHECK(row.distance <= row.bound);
    // j=2 row against the explicit bound
    double xi = 1.0 / 3.0;
    CHECK(rows[2].distance <=
          (std::pow(xi, 2) + std::pow(xi, 6)) / std::sqrt(2.0) + rows[2].bound);
  }
  SUBCASE("square") {
    auto rows = hausdorff_convergence(Family::Square, 0, 6);
    REQUIRE(rows.size() == 7);
    CHECK(rows[6].distance == 0.0);
    for (const auto& row : rows) CHECK(row.distance <= row.bound);
    CHECK(rows[2].distance <= std::pow(0.25, 2) + std::pow(0.25, 6) + rows[2].bound);
  }
}

TEST_CASE("collar measure series") {
  auto sq = collar_measure_series(Family::Square, 0, 4);
  REQUIRE(sq.size() == 5);
  double expect[] = {2.0, 1.0, 0.5, 0.25, 0.125};
  for (int j = 0; j <= 4; ++j) {
    CHECK(sq[j].geometric == expect[j]);
    CHECK(sq[j].closed_form == expect[j]);
  }
  auto cl = collar_measure_series(Family::Classical, M_PI / 6, 4);
  CHECK(cl[0].closed_form == doctest::Approx(1.5 * std::sqrt(1.0 / 12.0)).epsilon(1e-14));
  for (const auto& row : cl)
    CHECK(row.geometric == doctest::Approx(row.closed_form).epsilon(1e-9));
  for (std::size_t j = 1; j < cl.size(); ++j)
    CHECK(cl[j].closed_form / cl[j - 1].closed_form ==
          doctest::Approx(4.0 / 9.0).epsilon(1e-12));
}
