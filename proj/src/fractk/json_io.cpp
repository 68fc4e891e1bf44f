#include "fractk/json_io.hpp"

#include <cmath>
#include <stdexcept>

namespace fractk {

namespace {

json point_to_json(Point p) { return json::array({double(p.x), double(p.y)}); }

Point point_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("point: expected [x,y]");
  return {real(j[0].get<double>()), real(j[1].get<double>())};
}

}  // namespace

json polygon_to_json(const Polygon& p) {
  json verts = json::array();
  for (Point v : p.vertices()) verts.push_back(point_to_json(v));
  return json{{"vertices", verts}, {"closed", true}};
}

Polygon polygon_from_json(const json& j) {
  if (!j.contains("vertices")) throw std::invalid_argument("polygon: missing vertices");
  std::vector<Point> pts;
  for (const auto& v : j.at("vertices")) pts.push_back(point_from_json(v));
  return Polygon(std::move(pts));
}

json segments_to_json(std::span<const Segment> segs) {
  json arr = json::array();
  for (const Segment& s : segs)
    arr.push_back(json::array({point_to_json(s.a), point_to_json(s.b)}));
  return json{{"segments", arr}};
}

std::vector<Segment> segments_from_json(const json& j) {
  std::vector<Segment> out;
  for (const auto& e : j.at("segments"))
    out.push_back({point_from_json(e[0]), point_from_json(e[1])});
  return out;
}

json axis_square_to_json(const AxisSquare& q) {
  return json{{"min_corner", point_to_json(q.min_corner)}, {"side", double(q.side)}};
}

json disc_to_json(const Disc& d) {
  return json{{"center", point_to_json(d.center)}, {"radius", double(d.radius)}};
}

json witness_report_to_json(const WitnessReport& rep) {
  json query{{"kind", rep.query_kind}, {"level", rep.level},
             {"point", point_to_json(rep.query_point)}};
  if (rep.query_cube) query["cube"] = axis_square_to_json(*rep.query_cube);
  json realized = json::object();
  for (const auto& [k, v] : rep.realized) realized[k] = double(v);
  json bounds = json::object();
  for (const auto& [k, iv] : rep.bounds)
    bounds[k] = json::array({double(iv.first), double(iv.second)});
  json witness;
  if (rep.witness)
    witness = json{{"square", axis_square_to_json(*rep.witness)}};
  else if (rep.witness_disc)
    witness = json{{"disc", disc_to_json(*rep.witness_disc)}};
  else
    witness = nullptr;
  json out{{"query", query},     {"witness", witness},     {"realized", realized},
           {"bounds", bounds},   {"satisfied", rep.satisfied}};
  if (!rep.note.empty()) out["note"] = rep.note;
  return out;
}

json cond1_report_to_json(const Cond1Report& rep) {
  return json{{"level", rep.level},
              {"c", double(rep.c)},
              {"samples", rep.samples},
              {"max_inner_ratio", double(rep.max_inner_ratio)},
              {"max_outer_ratio", double(rep.max_outer_ratio)},
              {"satisfied", rep.satisfied}};
}

json verdict_to_json(const Verdict& v) {
  json out{{"answer", v.answer}};
  out["theorem"] = v.theorem.empty() ? json(nullptr) : json(v.theorem);
  out["window"] = v.window ? json::array({v.window->first, v.window->second}) : json(nullptr);
  out["reason"] = v.reason;
  return out;
}

SpaceParams space_params_from_json(const json& j) {
  SpaceParams sp;
  std::string fam = j.value("family", "H");
  if (fam == "B")
    sp.family = SpaceFamily::B;
  else if (fam == "F")
    sp.family = SpaceFamily::F;
  else if (fam == "H")
    sp.family = SpaceFamily::H;
  else
    throw std::invalid_argument("space params: family must be B, F or H");
  sp.s = j.value("s", 0.0);
  sp.p = j.value("p", 2.0);
  sp.q = sp.family == SpaceFamily::H ? 2.0 : j.value("q", 2.0);
  sp.n = j.value("n", 1);
  return sp;
}

SetDescriptor set_descriptor_from_json(const json& j) {
  SetDescriptor set;
  std::string kind = j.value("kind", "dset");
  if (kind == "dset")
    set.kind = SetKind::DSet;
  else if (kind == "point")
    set.kind = SetKind::PointSet;
  else if (kind == "hyperplane")
    set.kind = SetKind::Hyperplane;
  else if (kind == "snowflake_boundary")
    set.kind = SetKind::SnowflakeBoundary;
  else if (kind == "thick_domain_closure")
    set.kind = SetKind::ThickDomainClosure;
  else if (kind == "custom")
    set.kind = SetKind::Custom;
  else
    throw std::invalid_argument("set descriptor: unknown kind " + kind);
  if (set.kind == SetKind::SnowflakeBoundary && j.contains("beta") && !j.contains("d")) {
    // auto-fill the dimension from the family formula
    set.d = double(classical_dimension(ClassicalParams{real(j.at("beta").get<double>())}));
  } else {
    set.d = j.value("d", 0.0);
  }
  set.compact = j.value("compact", true);
  set.boundary_measure_zero = j.value("boundary_measure_zero", false);
  set.thick = j.value("thick", false);
  set.smooth = j.value("smooth", false);
  return set;
}

json fit_to_json(const DimensionFit& fit) {
  return json{{"slope", double(fit.slope)},
              {"intercept", double(fit.intercept)},
              {"residual", double(fit.residual)},
              {"r_min", double(fit.r_min)},
              {"r_max", double(fit.r_max)}};
}

}  // namespace fractk
