// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion. Exit code 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "fractk/pipeline.hpp"

using namespace fractk;

namespace {

const double kBetas[] = {M_PI / 3, M_PI / 6, M_PI / 20};

struct Harness {
  int failures = 0;

  void run(int id, const std::string& title, const std::function<bool(std::string&)>& body) {
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] criterion %d: %s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", id,
                title.c_str(), elapsed, detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
};

bool check(bool cond, const std::string& msg, std::string& detail) {
  if (!cond && detail.empty()) detail = msg;
  return cond;
}

// ---------------------------------------------------------------------------

bool criterion_combinatorics(std::string& detail) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  for (double beta : kBetas) {
    ClassicalParams p{beta};
    double xi = p.xi();
    for (int j = 0; j <= 6; ++j) {
      Polygon inner = inner_prefractal(p, j);
      std::size_t want = std::size_t(3) << (2 * j);
      ok &= check(inner.size() == want, "inner edge count", detail);
      double len = std::pow(xi, j);
      for (const auto& e : inner.edges())
        ok &= check(std::abs(e.length() - len) <= 1e-12 * len, "inner edge length", detail);
      Polygon outer = outer_prefractal(p, j);
      ok &= check(outer.size() == 2 * want, "outer edge count", detail);
      double leno = std::pow(xi, j + 0.5);
      for (const auto& e : outer.edges())
        ok &= check(std::abs(e.length() - leno) <= 1e-12 * leno, "outer edge length", detail);
    }
  }
  for (int j = 0; j <= 6; ++j) {
    SquareLevel lv(j);
    std::size_t want = std::size_t(4) << (3 * j);
    ok &= check(lv.edge_count() == want, "square edge count", detail);
    const auto& loop = lv.loop();
    for (std::size_t i = 0; i < loop.size(); ++i) {
      auto a = loop[i];
      auto b = loop[(i + 1) % loop.size()];
      if (std::llabs(a.x - b.x) + std::llabs(a.y - b.y) != 1) {
        ok = check(false, "square edge length not exactly one cell", detail);
        break;
      }
    }
    // representative real-coordinate edges are exactly 4^-j
    auto segs = lv.boundary_segments();
    for (std::size_t i = 0; i < segs.size(); i += 97)
      ok &= check(segs[i].length() == std::pow(0.25, j), "square real edge length", detail);
  }
  double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ok &= check(elapsed < 30.0, "runtime exceeded 30 s", detail);
  return ok;
}

bool criterion_measures(std::string& detail) {
  bool ok = true;
  for (double beta : kBetas) {
    ClassicalParams p{beta};
    for (int j = 0; j <= 5; ++j) {
      double geo = polygon_area(outer_prefractal(p, j)) - polygon_area(inner_prefractal(p, j));
      double closed = classical_collar_area(p, j);
      ok &= check(std::abs(geo - closed) <= 1e-9 * closed, "classical collar area", detail);
    }
  }
  for (int j = 0; j <= 5; ++j) {
    SquareLevel lv(j);
    ok &= check(std::abs(lv.collar_area() - std::pow(2.0, 1 - j)) <= 1e-12,
                "square collar area", detail);
    ok &= check(lv.area() == 1.0, "square unit area", detail);
  }
  return ok;
}

bool criterion_nesting(std::string& detail) {
  bool ok = true;
  Tolerance tol{1e-9};
  for (double beta : kBetas) {
    ClassicalParams p{beta};
    std::vector<Polygon> inner, outer;
    for (int j = 0; j <= 6; ++j) {
      inner.push_back(inner_prefractal(p, j));
      outer.push_back(outer_prefractal(p, j));
    }
    for (int j = 0; j <= 5; ++j) {
      const auto& vin = inner[j].vertices();
      std::vector<char> bad(vin.size(), 0);
      parallel_for(vin.size(), [&](std::size_t i) {
        if (point_in_polygon(vin[i], inner[j + 1], tol) == Containment::Outside) bad[i] = 1;
        if (point_in_polygon(vin[i], outer[j], tol) == Containment::Outside) bad[i] = 1;
      });
      for (char b : bad) ok &= check(!b, "classical inner nesting", detail);
      const auto& vout = outer[j + 1].vertices();
      std::vector<char> bad2(vout.size(), 0);
      parallel_for(vout.size(), [&](std::size_t i) {
        if (point_in_polygon(vout[i], outer[j], tol) == Containment::Outside) bad2[i] = 1;
      });
      for (char b : bad2) ok &= check(!b, "classical outer nesting", detail);
    }
  }
  // Square family: exact lattice membership of complex vertices.
  std::vector<SquareLevel> lv;
  for (int j = 0; j <= 6; ++j) lv.emplace_back(j);
  for (int j = 1; j <= 5; ++j) {
    const auto& fine = lv[std::size_t(j + 1)];
    const auto& coarse = lv[std::size_t(j)];
    const auto& in_bd = coarse.inner_boundary();
    for (std::size_t k = 0; k < in_bd.size(); ++k) {
      IVec c = coarse.inner_boundary_owner(k);
      for (IVec d : {IVec{c.x - 1, c.y}, IVec{c.x + 1, c.y}, IVec{c.x, c.y - 1},
                     IVec{c.x, c.y + 1}}) {
        ok &= check(fine.point_in_inner(IVec{4 * d.x, 4 * d.y}),
                    "square inner nesting", detail);
        ok &= check(coarse.point_in_outer(d), "square inner in outer", detail);
      }
      if (!ok) return ok;
    }
    const auto& out_bd = fine.outer_boundary();
    for (std::size_t k = 0; k < out_bd.size(); ++k) {
      IVec c = fine.outer_boundary_owner(k);
      for (IVec d : {IVec{c.x - 1, c.y}, IVec{c.x + 1, c.y}, IVec{c.x, c.y - 1},
                     IVec{c.x, c.y + 1}}) {
        ok &= check(coarse.point_in_outer_scaled(d, 1), "square outer nesting", detail);
      }
      if (!ok) return ok;
    }
  }
  return ok;
}

bool criterion_ifs(std::string& detail) {
  bool ok = true;
  for (double beta : kBetas) {
    ClassicalParams p{beta};
    auto maps = classical_ifs(p);
    std::vector<Segment> seed{{{0, 0}, {1, 0}}};
    for (int j = 1; j <= 5; ++j) {
      auto img = ifs_iterate(maps, seed, j);
      auto pts = classical_one_leg(p, j);
      std::vector<Segment> leg;
      for (std::size_t i = 0; i + 1 < pts.size(); ++i) leg.push_back({pts[i], pts[i + 1]});
      double spacing = std::pow(p.xi(), j) / 4;
      auto hd = hausdorff_distance(img, leg, spacing);
      ok &= check(hd.value <= 1e-9 + hd.error_bound, "classical ifs equivalence", detail);
    }
    // open set condition on the one-leg collar triangle
    double h = p.triangle_height_unit();
    std::vector<Point> O{{0, 0}, {1, 0}, {0.5, h}};
    std::vector<std::vector<Point>> images;
    for (const auto& m : maps) {
      std::vector<Point> img;
      for (Point q : O) img.push_back(m.apply(q));
      images.push_back(img);
    }
    Polygon Op(O);
    for (const auto& img : images)
      for (Point q : img)
        ok &= check(point_in_polygon(q, Op, Tolerance{1e-12}) != Containment::Outside,
                    "classical osc containment", detail);
    for (std::size_t a = 0; a < images.size(); ++a)
      for (std::size_t b = a + 1; b < images.size(); ++b) {
        std::vector<Point> cut(images[a]);
        double area = 0;
        // Sutherland-Hodgman against the convex image b
        const auto& B = images[b];
        for (std::size_t i = 0; i < B.size() && !cut.empty(); ++i) {
          Point u = B[i], v = B[(i + 1) % B.size()];
          std::vector<Point> next;
          for (std::size_t kk = 0; kk < cut.size(); ++kk) {
            Point c = cut[kk], d = cut[(kk + 1) % cut.size()];
            double vc = cross(v - u, c - u), vd = cross(v - u, d - u);
            if (vc >= 0) next.push_back(c);
            if ((vc < 0) != (vd < 0)) next.push_back(c + (d - c) * (vc / (vc - vd)));
          }
          cut = std::move(next);
        }
        if (cut.size() >= 3) area = std::abs(double(signed_area(cut)));
        ok &= check(area < 1e-12, "classical osc disjointness", detail);
      }
  }
  // square family
  {
    auto maps = square_ifs();
    std::vector<Segment> seed{{{0, 0}, {1, 0}}};
    for (int j = 1; j <= 5; ++j) {
      auto img = ifs_iterate(maps, seed, j);
      auto pts = square_one_leg(j);
      std::vector<Segment> leg;
      for (std::size_t i = 0; i + 1 < pts.size(); ++i) leg.push_back({pts[i], pts[i + 1]});
      double spacing = std::pow(0.25, j) / 2;
      auto hd = hausdorff_distance(img, leg, spacing);
      ok &= check(hd.value <= 1e-9 + hd.error_bound, "square ifs equivalence", detail);
    }
    std::vector<Point> O{{0, 0}, {0.5, -0.5}, {1, 0}, {0.5, 0.5}};
    Polygon Op(O);
    std::vector<std::vector<Point>> images;
    for (const auto& m : maps) {
      std::vector<Point> img;
      for (Point q : O) img.push_back(m.apply(q));
      images.push_back(img);
    }
    for (const auto& img : images)
      for (Point q : img)
        ok &= check(point_in_polygon(q, Op, Tolerance{1e-12}) != Containment::Outside,
                    "square osc containment", detail);
    for (std::size_t a = 0; a < images.size(); ++a)
      for (std::size_t b = a + 1; b < images.size(); ++b) {
        std::vector<Point> cut(images[a]);
        const auto& B = images[b];
        for (std::size_t i = 0; i < B.size() && !cut.empty(); ++i) {
          Point u = B[i], v = B[(i + 1) % B.size()];
          std::vector<Point> next;
          for (std::size_t kk = 0; kk < cut.size(); ++kk) {
            Point c = cut[kk], d = cut[(kk + 1) % cut.size()];
            double vc = cross(v - u, c - u), vd = cross(v - u, d - u);
            if (vc >= 0) next.push_back(c);
            if ((vc < 0) != (vd < 0)) next.push_back(c + (d - c) * (vc / (vc - vd)));
          }
          cut = std::move(next);
        }
        double area = cut.size() >= 3 ? std::abs(double(signed_area(cut))) : 0.0;
        ok &= check(area < 1e-12, "square osc disjointness", detail);
      }
  }
  return ok;
}

bool criterion_dimension(std::string& detail) {
  bool ok = true;
  {
    auto t0 = std::chrono::steady_clock::now();
    EstimateConfig cfg;
    cfg.kind = "dimension";
    cfg.family = Family::Classical;
    cfg.beta = M_PI / 6;
    cfg.level = 7;
    cfg.k1 = 1;
    cfg.k2 = 6;
    cfg.drop_low = 1;
    cfg.drop_high = 1;
    json rep = run_estimate(cfg);
    double slope = rep["fit"]["slope"].get<double>();
    double target = std::log(4.0) / std::log(3.0);
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ok &= check(std::abs(slope - target) < 0.05,
                "koch slope " + std::to_string(slope), detail);
    ok &= check(elapsed < 120.0, "koch fit runtime", detail);
  }
  {
    auto t0 = std::chrono::steady_clock::now();
    EstimateConfig cfg;
    cfg.kind = "dimension";
    cfg.family = Family::Square;
    cfg.level = 6;
    cfg.k1 = 1;
    cfg.k2 = 5;
    cfg.drop_low = 1;
    cfg.drop_high = 1;
    json rep = run_estimate(cfg);
    double slope = rep["fit"]["slope"].get<double>();
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ok &= check(std::abs(slope - 1.5) < 0.05, "square slope " + std::to_string(slope), detail);
    ok &= check(elapsed < 120.0, "square fit runtime", detail);
  }
  return ok;
}

bool criterion_thickness(std::string& detail) {
  bool ok = true;
  for (Family family : {Family::Classical, Family::Square}) {
    double beta = M_PI / 6;
    double c_required = family == Family::Classical ? 0.5 : 1.0;
    for (int j = 1; j <= 5 && ok; ++j) {
      auto cert = make_certifier(family, beta, j);
      Cond1Report c1 = cert->check_cond1(c_required, 1000, 101 + j);
      ok &= check(c1.samples >= 1000, "cond1 sample count", detail);
      ok &= check(c1.satisfied, "cond1 at level " + std::to_string(j), detail);

      ThicknessConstants k = cert->proof_constants();
      SplitMix64 rng(3000 + j);
      std::vector<Point> xs(1000), xp(1000);
      for (auto& x : xs) x = cert->random_inner_boundary_point(rng);
      for (auto& x : xp) x = cert->random_outer_boundary_point(rng);
      std::vector<char> okv(2000, 0);
      parallel_for(1000, [&](std::size_t i) {
        okv[i] = cert->inner_cube_witness(xs[i]).satisfied;
        okv[1000 + i] = cert->exterior_cube_witness(xp[i]).satisfied;
      });
      std::size_t sat = 0;
      for (char c : okv) sat += c;
      ok &= check(sat == 2000,
                  "witness failures at level " + std::to_string(j) + ": " +
                      std::to_string(2000 - sat),
                  detail);

      // E/I-thickness queries seeded from fresh boundary samples
      QueryConstants qc_e{k.c1m, k.c2m, k.c3m, k.c4m};
      QueryConstants qc_i{k.c1p, k.c2p, k.c3p, k.c4p + k.c};
      SplitMix64 rng2(4000 + j);
      std::vector<Point> es(200), is(200);
      for (auto& x : es) x = cert->random_inner_boundary_point(rng2);
      for (auto& x : is) x = cert->random_outer_boundary_point(rng2);
      std::vector<char> okei(400, 0);
      parallel_for(200, [&](std::size_t i) {
        WitnessReport qi = cert->inner_cube_witness(es[i]);
        if (qi.satisfied && qi.witness) {
          WitnessReport e = cert->ethick_witness(*qi.witness, qc_e);
          okei[i] = e.satisfied &&
                    e.realized.at("dist_qi_qe_over_xij") <= qc_e.c4 + k.c + k.c4p + 1e-9;
        }
        WitnessReport qe = cert->exterior_cube_witness(is[i]);
        if (qe.satisfied && qe.witness) {
          WitnessReport r = cert->ithick_witness(*qe.witness, qc_i);
          okei[200 + i] = r.satisfied &&
                          r.realized.at("dist_qe_qi_over_xij") <= qc_i.c4 + k.c + k.c4m + 1e-9;
        }
      });
      std::size_t sat2 = 0;
      for (char c : okei) sat2 += c;
      ok &= check(sat2 == 400,
                  "ethick/ithick failures at level " + std::to_string(j) + ": " +
                      std::to_string(400 - sat2),
                  detail);
    }
  }
  return ok;
}

bool criterion_ball_interior(std::string& detail) {
  bool ok = true;
  for (Family family : {Family::Classical, Family::Square}) {
    auto cert = make_certifier(family, M_PI / 6, 5);
    SplitMix64 rng(77);
    double min_eta = 1;
    std::vector<Point> centers(100);
    for (auto& c : centers) c = cert->random_ball_center(rng);
    std::vector<real> etas(200);
    parallel_for(200, [&](std::size_t idx) {
      double r = (idx % 2 == 0) ? 0.25 : 0.0625;
      etas[idx] = ball_condition_witness(cert->porosity_grid(), centers[idx / 2], r).eta;
    });
    for (real e : etas) min_eta = std::min(min_eta, double(e));
    ok &= check(min_eta > 0, family_name(family) + " ball condition min eta", detail);

    VerifyConfig cfg;
    cfg.kind = "interior";
    cfg.family = family;
    cfg.beta = M_PI / 6;
    cfg.level = 5;
    cfg.samples = 200;
    cfg.seed = 7;
    cfg.stability_level = 6;
    json rep = run_verify(cfg);
    ok &= check(rep["min_ratio"].get<double>() > 0,
                family_name(family) + " interior min ratio", detail);
    ok &= check(rep["stability"]["relative_gap"].get<double>() <= 0.10,
                family_name(family) + " interior stability gap " +
                    std::to_string(rep["stability"]["relative_gap"].get<double>()),
                detail);
  }
  return ok;
}

bool criterion_truth_table(std::string& detail) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  int idx = 0;
  auto expect = [&](const json& verdict, const std::string& answer, bool needs_tag) {
    ++idx;
    bool good = verdict["answer"] == answer;
    if (needs_tag) good = good && !verdict["theorem"].is_null();
    if (!good && detail.empty())
      detail = "case " + std::to_string(idx) + ": got " + verdict.dump() + ", want " + answer;
    ok &= good;
  };
  const double koch_d = std::log(4.0) / std::log(3.0);

  // nullity (4)
  expect(run_classify("nullity", {{"family", "F"}, {"n", 2}, {"p", 2.0}, {"q", 2.0},
                                  {"s", 0.0}, {"kind", "dset"}, {"d", koch_d},
                                  {"compact", true}}),
         "Null", true);
  expect(run_classify("nullity", {{"family", "F"}, {"n", 2}, {"p", 2.0}, {"q", 2.0},
                                  {"s", -1.0}, {"kind", "dset"}, {"d", koch_d}}),
         "NonNull", true);
  expect(run_classify("nullity", {{"family", "H"}, {"n", 2}, {"p", 2.0},
                                  {"s", (koch_d - 2.0) / 2.0}, {"kind", "dset"},
                                  {"d", koch_d}, {"compact", true}}),
         "Null", true);
  expect(run_classify("nullity", {{"family", "B"}, {"n", 1}, {"p", 0.5}, {"q", 1.0},
                                  {"s", 3.0}, {"kind", "dset"}, {"d", 0.5}}),
         "Null", true);

  // thick-domain equality (3)
  expect(run_classify("q1", {{"family", "H"}, {"n", 2}, {"p", 2.0}, {"s", -7.0},
                             {"kind", "thick_domain_closure"}, {"thick", true},
                             {"boundary_measure_zero", true}}),
         "Yes", true);
  expect(run_classify("q1", {{"family", "B"}, {"n", 2}, {"p", 2.0}, {"q", 3.0}, {"s", 0.0},
                             {"kind", "thick_domain_closure"}, {"thick", true},
                             {"boundary_measure_zero", true}}),
         "Unknown", false);
  expect(run_classify("q1", {{"family", "H"}, {"n", 2}, {"p", 2.0}, {"s", 1.0},
                             {"kind", "thick_domain_closure"}, {"thick", false},
                             {"boundary_measure_zero", true}}),
         "Unknown", false);

  // density (6), including the hyperplane window (-3/2 - m, -1/2 - m)
  expect(run_classify("density", {{"family", "H"}, {"n", 3}, {"d", 2.0}, {"p", 2.0},
                                  {"kind", "hyperplane"}, {"s1", -0.9}, {"s2", -1.4}}),
         "Dense", true);
  expect(run_classify("density", {{"family", "H"}, {"n", 2}, {"d", koch_d}, {"p", 2.0},
                                  {"kind", "snowflake_boundary"}, {"s1", 0.0}, {"s2", -1.0}}),
         "NotDense", true);
  expect(run_classify("density", {{"family", "H"}, {"n", 3}, {"d", 2.0}, {"p", 2.0},
                                  {"kind", "dset"}, {"compact", true}, {"smooth", true},
                                  {"s1", -1.4}, {"s2", -1.6}}),
         "NotDense", true);
  expect(run_classify("density", {{"family", "H"}, {"n", 3}, {"d", 2.0}, {"p", 2.0},
                                  {"kind", "dset"}, {"compact", true}, {"smooth", false},
                                  {"s1", -1.4}, {"s2", -1.5}}),
         "Unknown", false);
  expect(run_classify("density", {{"family", "H"}, {"n", 2}, {"d", 1.0}, {"p", 2.0},
                                  {"kind", "hyperplane"}, {"s1", -1.7}, {"s2", -2.3}}),
         "Dense", true);
  expect(run_classify("density", {{"family", "H"}, {"n", 2}, {"d", 1.0}, {"p", 2.0},
                                  {"kind", "hyperplane"}, {"s1", -1.4}, {"s2", -1.6}}),
         "NotDense", true);

  // d = 0 (4)
  expect(run_classify("d0", {{"n", 2}, {"s1", -0.5}, {"p1", 2.0}, {"q1", 2.0},
                             {"s2", -0.9}, {"p2", 2.0}, {"q2", 2.0}}),
         "Trivial", true);
  expect(run_classify("d0", {{"n", 1}, {"s1", -0.6}, {"p1", 2.0}, {"q1", 2.0},
                             {"s2", -0.85}, {"p2", 4.0}, {"q2", 4.0}}),
         "Equal", true);
  expect(run_classify("d0", {{"n", 1}, {"s1", -1.0}, {"p1", 2.0}, {"q1", 2.0},
                             {"s2", -2.0}, {"p2", 2.0}, {"q2", 2.0}}),
         "NotDense", true);
  expect(run_classify("d0", {{"n", 3}, {"s1", 0.2}, {"p1", 1.0}, {"q1", 1.0},
                             {"s2", -0.7}, {"p2", 1.0}, {"q2", 1.0}}),
         "NotDense", true);

  // kernel window (3)
  expect(run_classify("kernel-window",
                      {{"n", 2}, {"d", 1.5}, {"p", 2.0}, {"m", 0}, {"s", 0.4}}),
         "Yes", true);
  expect(run_classify("kernel-window",
                      {{"n", 2}, {"d", 1.5}, {"p", 2.0}, {"m", 0}, {"s", 1.25}}),
         "Unknown", false);
  expect(run_classify("kernel-window",
                      {{"n", 2}, {"d", 1.5}, {"p", 2.0}, {"m", 0}, {"s", 0.2}}),
         "Unknown", false);

  bool twenty = idx == 20;
  if (!twenty && detail.empty()) detail = "expected 20 cases, ran " + std::to_string(idx);
  double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return ok && twenty && elapsed < 1.0;
}

long long enumerate_multiindices(int n, double t) {
  if (t <= 0) return 0;
  long long count = 0;
  std::function<void(int, int)> rec = [&](int pos, int used) {
    if (pos == n) {
      ++count;
      return;
    }
    for (int k = 0; used + k < t; ++k) rec(pos + 1, used + k);
  };
  rec(0, 0);
  return count;
}

bool criterion_point_dimension(std::string& detail) {
  bool ok = true;
  for (int n = 1; n <= 4 && ok; ++n) {
    for (double t = -1.0; t <= 10.0 + 1e-12; t += 0.25) {
      for (double p : {0.5, 1.0, 2.0, 3.0}) {
        double s = -t - n * (1.0 - 1.0 / p);
        long long got = point_space_dimension(n, p, s);
        long long want = enumerate_multiindices(n, t);
        if (got != want) {
          detail = "n=" + std::to_string(n) + " t=" + std::to_string(t) +
                   " p=" + std::to_string(p) + ": got " + std::to_string(got) + " want " +
                   std::to_string(want);
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
  }
  return ok;
}

bool criterion_determinism(std::string& detail) {
  auto run_suite = [] {
    std::ostringstream all;
    for (Family family : {Family::Classical, Family::Square}) {
      VerifyConfig cfg;
      cfg.family = family;
      cfg.beta = M_PI / 6;
      cfg.level = 3;
      cfg.samples = 120;
      cfg.seed = 2026;
      for (const char* kind : {"cond", "thickness", "ball", "interior"}) {
        cfg.kind = kind;
        cfg.stability_level = (std::string(kind) == "interior") ? 4 : 0;
        all << report_to_string(run_verify(cfg));
      }
      EstimateConfig est;
      est.family = family;
      est.beta = M_PI / 6;
      est.level = 5;
      est.kind = "ring";
      est.centers = 40;
      est.seed = 2026;
      all << report_to_string(run_estimate(est));
    }
    return all.str();
  };
  std::string first = run_suite();
  std::string second = run_suite();
  bool ok = first == second && !first.empty();
  if (!ok) detail = "reports differ between identically seeded runs";
  return ok;
}

}  // namespace

int main() {
  Harness h;
  h.run(1, "prefractal combinatorics (edge counts and lengths)", criterion_combinatorics);
  h.run(2, "collar and region measures match closed forms", criterion_measures);
  h.run(3, "nesting of inner/outer prefractals", criterion_nesting);
  h.run(4, "IFS boundary equivalence and open set condition", criterion_ifs);
  h.run(5, "box-counting dimension fits", criterion_dimension);
  h.run(6, "thickness certification (collar condition, cube witnesses, E/I queries)",
        criterion_thickness);
  h.run(7, "ball condition and interior regularity", criterion_ball_interior);
  h.run(8, "smoothness-index truth table (20 cases)", criterion_truth_table);
  h.run(9, "point-support dimension vs enumeration", criterion_point_dimension);
  h.run(10, "byte-identical reports for identical seeds", criterion_determinism);
  if (h.failures == 0) {
    std::printf("acceptance: all criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) failed\n", h.failures);
  return 1;
}
