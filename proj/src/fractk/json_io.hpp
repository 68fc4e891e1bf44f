#pragma once

#include <json.hpp>

#include "fractk/dimension.hpp"
#include "fractk/geom.hpp"
#include "fractk/spaces.hpp"
#include "fractk/thickness.hpp"

namespace fractk {

using json = nlohmann::json;

// Polygon wire schema: {"vertices": [[x,y],...], "closed": true}.
json polygon_to_json(const Polygon& p);
Polygon polygon_from_json(const json& j);

json segments_to_json(std::span<const Segment> segs);
std::vector<Segment> segments_from_json(const json& j);

json axis_square_to_json(const AxisSquare& q);
json disc_to_json(const Disc& d);

json witness_report_to_json(const WitnessReport& rep);
json cond1_report_to_json(const Cond1Report& rep);

json verdict_to_json(const Verdict& v);

SpaceParams space_params_from_json(const json& j);
SetDescriptor set_descriptor_from_json(const json& j);

json fit_to_json(const DimensionFit& fit);

}  // namespace fractk
