// fractk command-line front end. Links the shared C API only; all work
// happens behind fractk.h. Exit codes: 0 success, 1 unsatisfied verification
// or I/O failure, 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "fractk/fractk.h"

namespace {

using nlohmann::json;

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { fk_string_free(ptr); }
  std::string str() const { return ptr ? std::string(ptr) : std::string(); }
};

int write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open " << path << " for writing\n";
    return 1;
  }
  out << content;
  return out.good() ? 0 : 1;
}

int emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return 0;
  }
  return write_file(out_path, content);
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

int report_error(fk_status st) {
  std::cerr << "error: " << fk_status_name(st) << ": " << fk_last_error() << "\n";
  return st == FK_ERR_INVALID_ARGUMENT ? 2 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"snowflake prefractal geometry and smoothness-index toolkit"};
  app.require_subcommand(1);

  // ---- generate ----------------------------------------------------------
  auto* generate = app.add_subcommand("generate", "construct prefractal geometry");
  generate->require_subcommand(1);
  std::string gen_which, gen_out;
  double gen_beta = 0.5235987755982988;  // pi/6
  int gen_level = 0;

  auto add_generate_family = [&](const char* name, bool classical) {
    auto* sub = generate->add_subcommand(name);
    if (classical) sub->add_option("--beta", gen_beta, "apex half-angle in radians");
    sub->add_option("--level", gen_level, "prefractal level j")->required();
    sub->add_option("--which", gen_which,
                    classical ? "inner|outer|collar" : "boundary|inner|outer|collar")
        ->required();
    sub->add_option("--out", gen_out, "output file (.json or .svg); stdout if omitted");
    sub->callback([&, classical] {
      json cfg{{"family", classical ? "classical" : "square"},
               {"level", gen_level},
               {"which", gen_which}};
      if (classical) cfg["beta"] = gen_beta;
      OwnedString doc;
      fk_status st;
      if (ends_with(gen_out, ".svg"))
        st = fk_render_svg(cfg.dump().c_str(), &doc.ptr);
      else
        st = fk_generate(cfg.dump().c_str(), &doc.ptr);
      if (st != FK_OK) std::exit(report_error(st));
      std::exit(emit(gen_out, doc.str()));
    });
  };
  add_generate_family("classical", true);
  add_generate_family("square", false);

  // ---- verify -------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "finite-scale certification runs");
  verify->require_subcommand(1);
  std::string ver_family = "classical", ver_out, ver_profile = "proof";
  double ver_beta = 0.5235987755982988;
  int ver_level = 2, ver_stability = 0;
  std::size_t ver_samples = 1000;
  std::uint64_t ver_seed = 1;
  double ver_eps = 1e-9;
  for (const char* kind : {"cond", "thickness", "ball", "interior"}) {
    auto* sub = verify->add_subcommand(kind);
    sub->add_option("--family", ver_family, "classical|square");
    sub->add_option("--beta", ver_beta, "apex half-angle (classical)");
    sub->add_option("--level", ver_level, "prefractal level j")->required();
    sub->add_option("--samples", ver_samples, "boundary/collar sample count");
    sub->add_option("--seed", ver_seed, "splitmix64 seed");
    sub->add_option("--profile", ver_profile, "constant profile: proof|tight|loose");
    sub->add_option("--eps", ver_eps, "geometric tolerance / bound slack");
    if (std::string(kind) == "interior")
      sub->add_option("--stability-level", ver_stability, "second level for the stability check");
    sub->add_option("--out", ver_out, "report file; stdout if omitted");
    sub->callback([&, kind] {
      json cfg{{"kind", kind},       {"family", ver_family}, {"beta", ver_beta},
               {"level", ver_level}, {"samples", ver_samples}, {"seed", ver_seed},
               {"profile", ver_profile}, {"eps", ver_eps}};
      if (ver_stability > 0) cfg["stability_level"] = ver_stability;
      OwnedString doc;
      fk_status st = fk_verify(cfg.dump().c_str(), &doc.ptr);
      if (st != FK_OK && st != FK_ERR_UNSATISFIED) std::exit(report_error(st));
      int rc = emit(ver_out, doc.str());
      if (rc != 0) std::exit(rc);
      std::exit(st == FK_OK ? 0 : 1);
    });
  }

  // ---- estimate -----------------------------------------------------------
  auto* estimate = app.add_subcommand("estimate", "dimension and measure estimates");
  estimate->require_subcommand(1);
  std::string est_family = "classical", est_out, est_scales = "1..5";
  double est_beta = 0.5235987755982988;
  int est_level = 5, est_drop_low = 1, est_drop_high = 1;
  std::size_t est_centers = 50;
  std::uint64_t est_seed = 1;
  for (const char* kind : {"dimension", "ring", "collar", "convergence"}) {
    auto* sub = estimate->add_subcommand(kind);
    sub->add_option("--family", est_family, "classical|square");
    sub->add_option("--beta", est_beta, "apex half-angle (classical)");
    sub->add_option("--level", est_level, "prefractal level J")->required();
    if (std::string(kind) == "dimension") {
      sub->add_option("--scales", est_scales, "k1..k2 for grid pitches xi^k");
      sub->add_option("--drop-low", est_drop_low, "entries dropped at the fine end");
      sub->add_option("--drop-high", est_drop_high, "entries dropped at the coarse end");
    }
    if (std::string(kind) == "ring") {
      sub->add_option("--centers", est_centers, "number of boundary centers");
      sub->add_option("--seed", est_seed, "splitmix64 seed");
    }
    sub->add_option("--out", est_out, "output file (.csv for dimension); stdout if omitted");
    sub->callback([&, kind] {
      int k1 = 1, k2 = 5;
      auto dots = est_scales.find("..");
      if (dots != std::string::npos) {
        k1 = std::atoi(est_scales.substr(0, dots).c_str());
        k2 = std::atoi(est_scales.substr(dots + 2).c_str());
      }
      json cfg{{"kind", kind},     {"family", est_family},     {"beta", est_beta},
               {"level", est_level}, {"k1", k1},               {"k2", k2},
               {"drop_low", est_drop_low}, {"drop_high", est_drop_high},
               {"centers", est_centers},   {"seed", est_seed}};
      OwnedString doc;
      fk_status st = fk_estimate(cfg.dump().c_str(), &doc.ptr);
      if (st != FK_OK) std::exit(report_error(st));
      if (std::string(kind) == "dimension" && ends_with(est_out, ".csv")) {
        json rep = json::parse(doc.str());
        std::string csv = "r,count,logr,logcount\n";
        char row[160];
        for (const auto& e : rep["series"]) {
          std::snprintf(row, sizeof row, "%.17g,%llu,%.17g,%.17g\n",
                        e["r"].get<double>(),
                        (unsigned long long)e["count"].get<std::uint64_t>(),
                        e["logr"].get<double>(), e["logcount"].get<double>());
          csv += row;
        }
        int rc = write_file(est_out, csv);
        if (rc != 0) std::exit(rc);
        json fit = rep["fit"];
        fit["target"] = rep["target"];
        std::cout << fit.dump(2) << "\n";
        std::exit(0);
      }
      std::exit(emit(est_out, doc.str()));
    });
  }

  // ---- classify -----------------------------------------------------------
  auto* classify = app.add_subcommand("classify", "smoothness-index decision procedures");
  classify->require_subcommand(1);
  std::string cls_json, cls_out;
  for (const char* kind : {"nullity", "q1", "density", "d0", "kernel-window"}) {
    auto* sub = classify->add_subcommand(kind);
    sub->add_option("--json", cls_json, "parameter record")->required();
    sub->add_option("--out", cls_out, "verdict file; stdout if omitted");
    sub->callback([&, kind] {
      OwnedString doc;
      fk_status st = fk_classify(kind, cls_json.c_str(), &doc.ptr);
      if (st != FK_OK) std::exit(report_error(st));
      std::exit(emit(cls_out, doc.str()));
    });
  }

  // ---- export -------------------------------------------------------------
  auto* exp = app.add_subcommand("export", "render geometry files");
  auto* svg = exp->add_subcommand("svg");
  std::string exp_family = "classical", exp_which = "inner", exp_out;
  double exp_beta = 0.5235987755982988;
  int exp_level = 2;
  svg->add_option("--family", exp_family, "classical|square");
  svg->add_option("--beta", exp_beta, "apex half-angle (classical)");
  svg->add_option("--level", exp_level, "prefractal level")->required();
  svg->add_option("--which", exp_which, "inner|outer|collar|boundary");
  svg->add_option("--out", exp_out, "output .svg file")->required();
  svg->callback([&] {
    json cfg{{"family", exp_family}, {"beta", exp_beta}, {"level", exp_level},
             {"which", exp_which}};
    OwnedString doc;
    fk_status st = fk_render_svg(cfg.dump().c_str(), &doc.ptr);
    if (st != FK_OK) std::exit(report_error(st));
    std::exit(emit(exp_out, doc.str()));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  return 0;
}
