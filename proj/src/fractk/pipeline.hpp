#pragma once

#include <string>

#include "fractk/json_io.hpp"
#include "fractk/svg.hpp"

namespace fractk {

// Orchestration layer behind the C API and the CLI: every entry point takes
// and returns JSON documents so runs are reproducible and serializable.

struct GenerateConfig {
  Family family = Family::Classical;
  double beta = 0;        // classical only
  int level = 0;
  std::string which;      // classical: inner|outer|collar; square: boundary|inner|outer|collar
};
GenerateConfig generate_config_from_json(const json& j);
json run_generate(const GenerateConfig& cfg);
std::vector<SvgPath> generate_svg_paths(const GenerateConfig& cfg);

struct VerifyConfig {
  std::string kind;       // cond | thickness | ball | interior
  Family family = Family::Classical;
  double beta = 0;
  int level = 2;
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  std::string profile = "proof";  // proof | tight | loose
  int stability_level = 0;        // interior only; 0 = off
  double eps = 1e-9;              // geometric tolerance / bound slack
};
VerifyConfig verify_config_from_json(const json& j);
// Full verification report; report["satisfied"] carries the verdict.
json run_verify(const VerifyConfig& cfg);

struct EstimateConfig {
  std::string kind;       // dimension | ring | collar | convergence
  Family family = Family::Classical;
  double beta = 0;
  int level = 5;
  int k1 = 1, k2 = 5;     // dimension scales xi^k1 .. xi^k2
  int drop_low = 1, drop_high = 1;
  std::size_t centers = 50;
  std::uint64_t seed = 1;
};
EstimateConfig estimate_config_from_json(const json& j);
json run_estimate(const EstimateConfig& cfg);

// kind: nullity | q1 | density | d0 | kernel-window
json run_classify(const std::string& kind, const json& params);

std::string report_to_string(const json& report);

}  // namespace fractk
