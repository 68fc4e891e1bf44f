#include "fractk/pipeline.hpp"

#include <algorithm>
#include <cmath>

namespace fractk {

namespace {

constexpr double kPi = 3.14159265358979323846;

double beta_or_default(const json& j) {
  return j.value("beta", kPi / 6);
}

json family_config_json(Family family, double beta, int level) {
  json cfg{{"family", family_name(family)}, {"level", level}};
  if (family == Family::Classical) {
    ClassicalParams p{real(beta)};
    cfg["beta"] = beta;
    cfg["xi"] = double(p.xi());
  } else {
    cfg["xi"] = 0.25;
  }
  return cfg;
}

ThicknessConstants profile_constants(const Certifier& cert, const std::string& profile) {
  ThicknessConstants k = cert.proof_constants();
  if (profile == "proof") return k;
  if (profile == "tight") return k.scaled(real(0.5));
  if (profile == "loose") return k.scaled(real(2));
  throw std::invalid_argument("unknown constant profile: " + profile);
}

json constants_to_json(const ThicknessConstants& k) {
  return json{{"c", double(k.c)},     {"c1m", double(k.c1m)}, {"c2m", double(k.c2m)},
              {"c3m", double(k.c3m)}, {"c4m", double(k.c4m)}, {"c1p", double(k.c1p)},
              {"c2p", double(k.c2p)}, {"c3p", double(k.c3p)}, {"c4p", double(k.c4p)}};
}

}  // namespace

GenerateConfig generate_config_from_json(const json& j) {
  GenerateConfig cfg;
  cfg.family = family_from_name(j.value("family", "classical"));
  cfg.beta = beta_or_default(j);
  cfg.level = j.value("level", 0);
  cfg.which = j.value("which", cfg.family == Family::Classical ? "inner" : "boundary");
  return cfg;
}

json run_generate(const GenerateConfig& cfg) {
  json out = family_config_json(cfg.family, cfg.beta, cfg.level);
  out["which"] = cfg.which;
  if (cfg.family == Family::Classical) {
    ClassicalParams p{real(cfg.beta)};
    if (cfg.which == "inner" || cfg.which == "outer") {
      Polygon poly = cfg.which == "inner" ? inner_prefractal(p, cfg.level)
                                          : outer_prefractal(p, cfg.level);
      out["polygon"] = polygon_to_json(poly);
      out["edge_count"] = poly.size();
      out["edge_length"] = double(cfg.which == "inner"
                                      ? std::pow(p.xi(), cfg.level)
                                      : std::pow(p.xi(), cfg.level + real(0.5)));
      out["area"] = double(polygon_area(poly));
      return out;
    }
    if (cfg.which == "collar") {
      ClassicalLevel lv(p, cfg.level);
      json cells = json::array();
      for (const Triangle& t : lv.collar_cells())
        cells.push_back(json::array({json::array({double(t.a.x), double(t.a.y)}),
                                     json::array({double(t.b.x), double(t.b.y)}),
                                     json::array({double(t.c.x), double(t.c.y)})}));
      out["cells"] = cells;
      out["area"] = double(classical_collar_area(p, cfg.level));
      return out;
    }
    throw std::invalid_argument("generate classical: which must be inner|outer|collar");
  }

  SquareLevel lv(cfg.level);
  if (cfg.which == "boundary") {
    Polygon poly = lv.boundary_polygon();
    out["polygon"] = polygon_to_json(poly);
    out["edge_count"] = poly.size();
    out["edge_length"] = double(lv.unit());
    out["area"] = double(lv.area());
    json cells = json::array();
    for (const auto& c : lv.cells()) cells.push_back(json::array({c[0], c[1]}));
    out["resolution"] = double(lv.unit());
    out["cells"] = cells;
    return out;
  }
  if (cfg.which == "collar") {
    json cells = json::array();
    for (std::size_t k = 0; k < lv.collar_cell_count(); ++k) {
      auto quad = lv.collar_cell(k);
      json q = json::array();
      for (Point v : quad) q.push_back(json::array({double(v.x), double(v.y)}));
      cells.push_back(q);
    }
    out["tilted_squares"] = cells;
    out["area"] = double(lv.collar_area());
    return out;
  }
  if (cfg.which == "inner" || cfg.which == "outer") {
    bool inner = cfg.which == "inner";
    out["resolution"] = double(lv.unit());
    out["area"] = double(inner ? lv.inner_area() : lv.outer_area());
    const auto& bd = inner ? lv.inner_boundary() : lv.outer_boundary();
    out["boundary"] = segments_to_json(bd);
    json owners = json::array();
    for (std::size_t k = 0; k < bd.size(); ++k) {
      IVec c = inner ? lv.inner_boundary_owner(k) : lv.outer_boundary_owner(k);
      owners.push_back(json::array({c.x, c.y}));
    }
    out["diamond_centers_doubled"] = owners;
    return out;
  }
  throw std::invalid_argument("generate square: which must be boundary|inner|outer|collar");
}

std::vector<SvgPath> generate_svg_paths(const GenerateConfig& cfg) {
  std::vector<SvgPath> paths;
  if (cfg.family == Family::Classical) {
    ClassicalParams p{real(cfg.beta)};
    if (cfg.which == "inner") {
      paths.push_back({inner_prefractal(p, cfg.level).vertices(), {}, true});
    } else if (cfg.which == "outer") {
      paths.push_back({outer_prefractal(p, cfg.level).vertices(), {}, true});
    } else if (cfg.which == "collar") {
      // overlay: outer first, inner drawn last
      SvgPath outer{outer_prefractal(p, cfg.level).vertices(), {}, true, "#b40000"};
      SvgPath inner{inner_prefractal(p, cfg.level).vertices(), {}, true, "#000000"};
      paths.push_back(outer);
      paths.push_back(inner);
    } else {
      throw std::invalid_argument("svg classical: which must be inner|outer|collar");
    }
    return paths;
  }
  SquareLevel lv(cfg.level);
  if (cfg.which == "boundary") {
    paths.push_back({lv.boundary_polygon().vertices(), {}, true});
  } else if (cfg.which == "inner" || cfg.which == "outer") {
    SvgPath soup;
    soup.segments = cfg.which == "inner" ? lv.inner_boundary() : lv.outer_boundary();
    soup.closed = false;
    paths.push_back(soup);
  } else if (cfg.which == "collar") {
    SvgPath outer;
    outer.segments = lv.outer_boundary();
    outer.closed = false;
    outer.stroke = "#b40000";
    paths.push_back(outer);
    SvgPath inner;
    inner.segments = lv.inner_boundary();
    inner.closed = false;
    paths.push_back(inner);
  } else {
    throw std::invalid_argument("svg square: which must be boundary|inner|outer|collar");
  }
  return paths;
}

VerifyConfig verify_config_from_json(const json& j) {
  VerifyConfig cfg;
  cfg.kind = j.value("kind", "cond");
  cfg.family = family_from_name(j.value("family", "classical"));
  cfg.beta = beta_or_default(j);
  cfg.level = j.value("level", 2);
  cfg.samples = j.value("samples", std::size_t(1000));
  cfg.seed = j.value("seed", std::uint64_t(1));
  cfg.profile = j.value("profile", "proof");
  cfg.stability_level = j.value("stability_level", 0);
  cfg.eps = j.value("eps", 1e-9);
  return cfg;
}

namespace {

json verify_cond(const VerifyConfig& cfg, const Certifier& cert,
                 const ThicknessConstants& k) {
  json out;
  Cond1Report c1 = cert.check_cond1(k.c, cfg.samples, cfg.seed);
  out["cond1"] = cond1_report_to_json(c1);

  SplitMix64 rng(cfg.seed + 1);
  std::vector<Point> xs_minus(cfg.samples), xs_plus(cfg.samples);
  for (std::size_t i = 0; i < cfg.samples; ++i) xs_minus[i] = cert.random_inner_boundary_point(rng);
  for (std::size_t i = 0; i < cfg.samples; ++i) xs_plus[i] = cert.random_outer_boundary_point(rng);

  std::vector<WitnessReport> inner(cfg.samples), outer(cfg.samples);
  parallel_for(cfg.samples, [&](std::size_t i) { inner[i] = cert.inner_cube_witness(xs_minus[i]); });
  parallel_for(cfg.samples, [&](std::size_t i) { outer[i] = cert.exterior_cube_witness(xs_plus[i]); });

  auto pack = [](const std::vector<WitnessReport>& reps) {
    json arr = json::array();
    std::size_t ok = 0;
    for (const auto& r : reps) {
      arr.push_back(witness_report_to_json(r));
      if (r.satisfied) ++ok;
    }
    return std::pair{arr, ok};
  };
  auto [inner_arr, inner_ok] = pack(inner);
  auto [outer_arr, outer_ok] = pack(outer);
  out["cond2"] = json{{"count", cfg.samples}, {"satisfied_count", inner_ok}, {"reports", inner_arr}};
  out["cond3"] = json{{"count", cfg.samples}, {"satisfied_count", outer_ok}, {"reports", outer_arr}};
  out["satisfied"] =
      c1.satisfied && inner_ok == cfg.samples && outer_ok == cfg.samples;
  return out;
}

json verify_thickness(const VerifyConfig& cfg, const Certifier& cert,
                      const ThicknessConstants& k) {
  SplitMix64 rng(cfg.seed + 2);
  std::size_t n = cfg.samples;
  std::vector<Point> xs_minus(n), xs_plus(n);
  for (std::size_t i = 0; i < n; ++i) xs_minus[i] = cert.random_inner_boundary_point(rng);
  for (std::size_t i = 0; i < n; ++i) xs_plus[i] = cert.random_outer_boundary_point(rng);

  QueryConstants qc_e{k.c1m, k.c2m, k.c3m, k.c4m};
  // Exterior query cubes sit in carved cells; their distance to the inner
  // boundary is bounded through the collar jump.
  QueryConstants qc_i{k.c1p, k.c2p, k.c3p, k.c4p + k.c};

  std::vector<json> erows(n), irows(n);
  std::vector<char> eok(n, 0), iok(n, 0);
  parallel_for(n, [&](std::size_t i) {
    json row;
    WitnessReport qi = cert.inner_cube_witness(xs_minus[i]);
    if (qi.satisfied && qi.witness) {
      WitnessReport rep = cert.ethick_witness(*qi.witness, qc_e);
      row = witness_report_to_json(rep);
      eok[i] = rep.satisfied;
    } else {
      row = json{{"query", {{"kind", "ethick"}}}, {"satisfied", false},
                 {"note", "no valid interior query cube"}};
    }
    erows[i] = row;
  });
  parallel_for(n, [&](std::size_t i) {
    json row;
    WitnessReport qe = cert.exterior_cube_witness(xs_plus[i]);
    if (qe.satisfied && qe.witness) {
      WitnessReport rep = cert.ithick_witness(*qe.witness, qc_i);
      row = witness_report_to_json(rep);
      iok[i] = rep.satisfied;
    } else {
      row = json{{"query", {{"kind", "ithick"}}}, {"satisfied", false},
                 {"note", "no valid exterior query cube"}};
    }
    irows[i] = row;
  });
  std::size_t e_ok = std::size_t(std::count(eok.begin(), eok.end(), 1));
  std::size_t i_ok = std::size_t(std::count(iok.begin(), iok.end(), 1));
  json out;
  out["ethick"] = json{{"count", n}, {"satisfied_count", e_ok}, {"reports", erows}};
  out["ithick"] = json{{"count", n}, {"satisfied_count", i_ok}, {"reports", irows}};
  out["satisfied"] = e_ok == n && i_ok == n;
  return out;
}

json verify_ball(const VerifyConfig& cfg, const Certifier& cert) {
  SplitMix64 rng(cfg.seed + 3);
  std::vector<double> radii{0.25, 0.0625};
  std::vector<Point> centers(cfg.samples);
  for (auto& c : centers) c = cert.random_ball_center(rng);
  std::vector<json> rows(centers.size() * radii.size());
  std::vector<real> etas(rows.size());
  parallel_for(rows.size(), [&](std::size_t idx) {
    Point x = centers[idx / radii.size()];
    double r = radii[idx % radii.size()];
    BallWitness w = ball_condition_witness(cert.porosity_grid(), x, r);
    etas[idx] = w.eta;
    rows[idx] = json{{"query", {{"center", {double(x.x), double(x.y)}}, {"r", r}}},
                     {"witness", {{"disc", disc_to_json(w.disc)}}},
                     {"realized", {{"eta", double(w.eta)}}},
                     {"satisfied", w.eta > 0}};
  });
  real min_eta = *std::min_element(etas.begin(), etas.end());
  json out;
  out["reports"] = rows;
  out["min_eta"] = double(min_eta);
  out["satisfied"] = min_eta > 0;
  return out;
}

json verify_interior(const VerifyConfig& cfg, const Certifier& cert) {
  SplitMix64 rng(cfg.seed + 4);
  std::vector<Point> centers = cert.stratified_inner_boundary_points(cfg.samples, rng);
  real xi = cert.xi();
  std::vector<real> sides{xi, xi * xi, xi * xi * xi, xi * xi * xi * xi};
  InteriorScanResult res = cert.interior_regularity_scan(centers, sides);
  json out;
  out["cubes"] = res.cubes;
  out["min_ratio"] = double(res.min_ratio);
  out["argmin"] = json{{"center", {double(res.argmin_center.x), double(res.argmin_center.y)}},
                       {"side", double(res.argmin_side)}};
  bool ok = res.min_ratio > 0;
  if (cfg.stability_level > 0 && cfg.stability_level != cfg.level) {
    // The comparison level is scanned as its own object: fresh stratified
    // samples on its own boundary, same seed.
    auto other = make_certifier(cfg.family, cfg.beta, cfg.stability_level, real(cfg.eps));
    SplitMix64 rng2(cfg.seed + 4);
    std::vector<Point> centers2 = other->stratified_inner_boundary_points(cfg.samples, rng2);
    InteriorScanResult res2 = other->interior_regularity_scan(centers2, sides);
    out["stability"] = json{{"level", cfg.stability_level},
                            {"min_ratio", double(res2.min_ratio)}};
    real rel = std::abs(res.min_ratio - res2.min_ratio) /
               std::max(res.min_ratio, res2.min_ratio);
    out["stability"]["relative_gap"] = double(rel);
    ok = ok && res2.min_ratio > 0 && rel <= real(0.10);
  }
  out["satisfied"] = ok;
  return out;
}

}  // namespace

json run_verify(const VerifyConfig& cfg) {
  auto cert = make_certifier(cfg.family, cfg.beta, cfg.level, real(cfg.eps));
  ThicknessConstants k = profile_constants(*cert, cfg.profile);
  json out;
  out["kind"] = cfg.kind;
  out["config"] = family_config_json(cfg.family, cfg.beta, cfg.level);
  out["config"]["samples"] = cfg.samples;
  out["config"]["seed"] = cfg.seed;
  out["config"]["rng"] = "splitmix64";
  out["config"]["profile"] = cfg.profile;
  out["config"]["eps"] = cfg.eps;
  out["config"]["constants"] = constants_to_json(k);

  json body;
  if (cfg.kind == "cond")
    body = verify_cond(cfg, *cert, k);
  else if (cfg.kind == "thickness")
    body = verify_thickness(cfg, *cert, k);
  else if (cfg.kind == "ball")
    body = verify_ball(cfg, *cert);
  else if (cfg.kind == "interior")
    body = verify_interior(cfg, *cert);
  else
    throw std::invalid_argument("verify kind must be cond|thickness|ball|interior");
  for (auto& [key, value] : body.items()) out[key] = value;
  return out;
}

EstimateConfig estimate_config_from_json(const json& j) {
  EstimateConfig cfg;
  cfg.kind = j.value("kind", "dimension");
  cfg.family = family_from_name(j.value("family", "classical"));
  cfg.beta = beta_or_default(j);
  cfg.level = j.value("level", 5);
  cfg.k1 = j.value("k1", 1);
  cfg.k2 = j.value("k2", 5);
  cfg.drop_low = j.value("drop_low", 1);
  cfg.drop_high = j.value("drop_high", 1);
  cfg.centers = j.value("centers", std::size_t(50));
  cfg.seed = j.value("seed", std::uint64_t(1));
  return cfg;
}

json run_estimate(const EstimateConfig& cfg) {
  json out;
  out["kind"] = cfg.kind;
  out["config"] = family_config_json(cfg.family, cfg.beta, cfg.level);
  real xi =
      cfg.family == Family::Classical ? ClassicalParams{real(cfg.beta)}.xi() : real(0.25);

  if (cfg.kind == "dimension") {
    std::vector<Segment> boundary =
        cfg.family == Family::Classical
            ? inner_prefractal(ClassicalParams{real(cfg.beta)}, cfg.level).edges()
            : SquareLevel(cfg.level).boundary_segments();
    BoxCountSeries series;
    json rows = json::array();
    for (int kk = cfg.k1; kk <= cfg.k2; ++kk) {
      real r = std::pow(xi, kk);
      std::size_t count = box_count(boundary, r);
      series.entries.push_back({r, count});
      rows.push_back(json{{"r", double(r)},
                          {"count", count},
                          {"logr", double(std::log(r))},
                          {"logcount", double(std::log(real(count)))}});
    }
    auto fit = fit_dimension(series, cfg.drop_low, cfg.drop_high);
    out["series"] = rows;
    out["fit"] = fit_to_json(fit);
    out["target"] = cfg.family == Family::Classical
                        ? double(classical_dimension(ClassicalParams{real(cfg.beta)}))
                        : 1.5;
    return out;
  }
  if (cfg.kind == "ring") {
    std::vector<Segment> boundary;
    std::vector<Point> verts;
    if (cfg.family == Family::Classical) {
      Polygon poly = inner_prefractal(ClassicalParams{real(cfg.beta)}, cfg.level);
      boundary = poly.edges();
      verts = poly.vertices();
    } else {
      SquareLevel lv(cfg.level);
      boundary = lv.boundary_segments();
      for (const auto& v : lv.loop()) verts.push_back({real(v.x) * lv.unit(), real(v.y) * lv.unit()});
    }
    double d = cfg.family == Family::Classical
                   ? double(classical_dimension(ClassicalParams{real(cfg.beta)}))
                   : 1.5;
    SplitMix64 rng(cfg.seed);
    std::vector<Point> centers(cfg.centers);
    for (auto& c : centers) c = verts[std::size_t(rng.below(verts.size()))];
    // radii must stay strictly above the level resolution xi^(J-2)
    std::vector<real> radii;
    for (int kk = 1; kk <= std::min(3, cfg.level - 3); ++kk)
      radii.push_back(std::pow(xi, kk));
    if (radii.empty()) throw std::invalid_argument("estimate ring: level too small");
    auto res = dset_ring_check(boundary, xi, real(d), centers, radii);
    out["d"] = d;
    out["c1_hat"] = double(res.c1_hat);
    out["c2_hat"] = double(res.c2_hat);
    out["ratio"] = double(res.c2_hat / res.c1_hat);
    return out;
  }
  if (cfg.kind == "collar") {
    auto rows = collar_measure_series(cfg.family, cfg.beta, cfg.level);
    json arr = json::array();
    real worst = 0;
    for (const auto& row : rows) {
      arr.push_back(json{{"j", row.j},
                         {"geometric", double(row.geometric)},
                         {"closed_form", double(row.closed_form)}});
      worst = std::max(worst, std::abs(row.geometric - row.closed_form) /
                                  std::max(real(1e-300), row.closed_form));
    }
    out["rows"] = arr;
    out["max_rel_error"] = double(worst);
    out["satisfied"] = worst <= real(1e-9);
    return out;
  }
  if (cfg.kind == "convergence") {
    auto rows = hausdorff_convergence(cfg.family, cfg.beta, cfg.level);
    json arr = json::array();
    bool ok = true;
    for (const auto& row : rows) {
      arr.push_back(json{{"j", row.j},
                         {"distance", double(row.distance)},
                         {"bound", double(row.bound)}});
      ok = ok && row.distance <= row.bound;
    }
    out["rows"] = arr;
    out["satisfied"] = ok;
    return out;
  }
  throw std::invalid_argument("estimate kind must be dimension|ring|collar|convergence");
}

json run_classify(const std::string& kind, const json& params) {
  if (kind == "nullity") {
    Verdict v = nullity_classify(space_params_from_json(params),
                                 set_descriptor_from_json(params));
    return verdict_to_json(v);
  }
  if (kind == "q1") {
    Verdict v = q1_equality_decide(set_descriptor_from_json(params),
                                   space_params_from_json(params));
    return verdict_to_json(v);
  }
  if (kind == "density") {
    if (!params.contains("s1") || !params.contains("s2"))
      throw std::invalid_argument("classify density: need s1 and s2");
    SpaceParams sp = space_params_from_json(params);
    SetDescriptor set = set_descriptor_from_json(params);
    Verdict v = density_decide(params.at("s1").get<double>(),
                               params.at("s2").get<double>(), sp, set);
    return verdict_to_json(v);
  }
  if (kind == "d0") {
    Verdict v = d0_density_decide(params.at("s1").get<double>(), params.value("p1", 2.0),
                                  params.value("q1", 2.0), params.at("s2").get<double>(),
                                  params.value("p2", 2.0), params.value("q2", 2.0),
                                  params.value("n", 1));
    return verdict_to_json(v);
  }
  if (kind == "kernel-window") {
    Verdict v = kernel_window_check(params.value("n", 2), params.at("d").get<double>(),
                                    params.value("p", 2.0), params.value("m", 0),
                                    params.at("s").get<double>());
    return verdict_to_json(v);
  }
  throw std::invalid_argument("classify kind must be nullity|q1|density|d0|kernel-window");
}

std::string report_to_string(const json& report) { return report.dump(2) + "\n"; }

}  // namespace fractk
