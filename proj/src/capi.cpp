#include "fractk/fractk.h"

#include <cmath>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "fractk/pipeline.hpp"

using namespace fractk;

struct fk_level {
  Family family;
  double beta;
  int level;
};

namespace {

thread_local std::string g_last_error;

fk_status fail(fk_status code, const std::string& what) {
  g_last_error = what;
  return code;
}

char* dup_string(const std::string& s) {
  char* out = new (std::nothrow) char[s.size() + 1];
  if (!out) return nullptr;
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Translate core exceptions into status codes at the boundary.
template <typename Fn>
fk_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const cap_exceeded& e) {
    return fail(FK_ERR_CAP_EXCEEDED, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(FK_ERR_INVALID_ARGUMENT, e.what());
  } catch (const json::exception& e) {
    return fail(FK_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(FK_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(FK_ERR_INTERNAL, "unknown error");
  }
}

fk_status write_json(const json& doc, char** out_json) {
  *out_json = dup_string(report_to_string(doc));
  if (!*out_json) return fail(FK_ERR_INTERNAL, "allocation failed");
  return FK_OK;
}

GenerateConfig level_config(const fk_level* level, const char* which) {
  GenerateConfig cfg;
  cfg.family = level->family;
  cfg.beta = level->beta;
  cfg.level = level->level;
  cfg.which = which ? which : "";
  return cfg;
}

}  // namespace

extern "C" {

const char* fk_version(void) { return "fractk 1.0.0"; }

const char* fk_status_name(fk_status status) {
  switch (status) {
    case FK_OK: return "ok";
    case FK_ERR_INVALID_ARGUMENT: return "invalid argument";
    case FK_ERR_UNSATISFIED: return "verification unsatisfied";
    case FK_ERR_CAP_EXCEEDED: return "cap exceeded";
    case FK_ERR_IO: return "io error";
    case FK_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* fk_last_error(void) { return g_last_error.c_str(); }

void fk_string_free(char* s) { delete[] s; }

fk_status fk_classical_create(double beta, int level, fk_level** out) {
  if (!out) return fail(FK_ERR_INVALID_ARGUMENT, "out is null");
  *out = nullptr;
  return guarded([&] {
    if (level < 0) throw std::invalid_argument("level must be >= 0");
    if (level > 9) throw cap_exceeded("classical level capped at 9");
    xi_of_beta(real(beta));  // validates the parameter range
    *out = new fk_level{Family::Classical, beta, level};
    return FK_OK;
  });
}

fk_status fk_square_create(int level, fk_level** out) {
  if (!out) return fail(FK_ERR_INVALID_ARGUMENT, "out is null");
  *out = nullptr;
  return guarded([&] {
    if (level < 0) throw std::invalid_argument("level must be >= 0");
    if (level > 8) throw cap_exceeded("square level capped at 8");
    *out = new fk_level{Family::Square, 0.0, level};
    return FK_OK;
  });
}

void fk_level_free(fk_level* level) { delete level; }

fk_status fk_level_edge_count(const fk_level* level, const char* which, long long* out) {
  if (!level || !which || !out) return fail(FK_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    std::string w = which;
    long long j = level->level;
    if (level->family == Family::Classical) {
      if (w == "inner")
        *out = 3ll << (2 * j);
      else if (w == "outer")
        *out = 6ll << (2 * j);
      else
        throw std::invalid_argument("which must be inner|outer");
    } else {
      if (w == "boundary")
        *out = 4ll << (3 * j);
      else
        throw std::invalid_argument("which must be boundary");
    }
    return FK_OK;
  });
}

fk_status fk_level_geometry_json(const fk_level* level, const char* which, char** out_json) {
  if (!level || !which || !out_json) return fail(FK_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { return write_json(run_generate(level_config(level, which)), out_json); });
}

fk_status fk_level_area(const fk_level* level, const char* which, double* out) {
  if (!level || !which || !out) return fail(FK_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    json doc = run_generate(level_config(level, which));
    if (!doc.contains("area")) throw std::invalid_argument("no area for this geometry");
    *out = doc["area"].get<double>();
    return FK_OK;
  });
}

fk_status fk_xi_of_beta(double beta, double* out) {
  if (!out) return fail(FK_ERR_INVALID_ARGUMENT, "out is null");
  return guarded([&] {
    *out = double(xi_of_beta(real(beta)));
    return FK_OK;
  });
}

fk_status fk_classical_dimension(double beta, double* out) {
  if (!out) return fail(FK_ERR_INVALID_ARGUMENT, "out is null");
  return guarded([&] {
    *out = double(classical_dimension(ClassicalParams{real(beta)}));
    return FK_OK;
  });
}

fk_status fk_classical_collar_area(double beta, int level, double* out) {
  if (!out) return fail(FK_ERR_INVALID_ARGUMENT, "out is null");
  return guarded([&] {
    *out = double(classical_collar_area(ClassicalParams{real(beta)}, level));
    return FK_OK;
  });
}

fk_status fk_square_collar_area(int level, double* out) {
  if (!out) return fail(FK_ERR_INVALID_ARGUMENT, "out is null");
  return guarded([&] {
    if (level < 0) throw std::invalid_argument("level must be >= 0");
    *out = std::pow(2.0, 1 - level);
    return FK_OK;
  });
}

fk_status fk_conjugate_exponent(double p, double* out) {
  if (!out) return fail(FK_ERR_INVALID_ARGUMENT, "out is null");
  return guarded([&] {
    *out = conjugate_exponent(p);
    return FK_OK;
  });
}

fk_status fk_density_window(int n, double d, double p, int m, double* lo, double* hi) {
  if (!lo || !hi) return fail(FK_ERR_INVALID_ARGUMENT, "out is null");
  return guarded([&] {
    auto w = density_window(n, d, p, m);
    *lo = w.first;
    *hi = w.second;
    return FK_OK;
  });
}

fk_status fk_point_space_dimension(int n, double p, double s, long long* out) {
  if (!out) return fail(FK_ERR_INVALID_ARGUMENT, "out is null");
  return guarded([&] {
    *out = point_space_dimension(n, p, s);
    return FK_OK;
  });
}

fk_status fk_trace_codomain_size(int n, int m, long long* out) {
  if (!out) return fail(FK_ERR_INVALID_ARGUMENT, "out is null");
  return guarded([&] {
    *out = trace_codomain_size(n, m);
    return FK_OK;
  });
}

fk_status fk_generate(const char* config_json, char** out_json) {
  if (!config_json || !out_json) return fail(FK_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    json cfg = json::parse(config_json);
    return write_json(run_generate(generate_config_from_json(cfg)), out_json);
  });
}

fk_status fk_verify(const char* config_json, char** out_json) {
  if (!config_json || !out_json) return fail(FK_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    json cfg = json::parse(config_json);
    json report = run_verify(verify_config_from_json(cfg));
    fk_status st = write_json(report, out_json);
    if (st != FK_OK) return st;
    if (!report.value("satisfied", false))
      return fail(FK_ERR_UNSATISFIED, "verification report contains unsatisfied checks");
    return FK_OK;
  });
}

fk_status fk_estimate(const char* config_json, char** out_json) {
  if (!config_json || !out_json) return fail(FK_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    json cfg = json::parse(config_json);
    return write_json(run_estimate(estimate_config_from_json(cfg)), out_json);
  });
}

fk_status fk_classify(const char* kind, const char* params_json, char** out_json) {
  if (!kind || !params_json || !out_json)
    return fail(FK_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    json params = json::parse(params_json);
    return write_json(run_classify(kind, params), out_json);
  });
}

fk_status fk_render_svg(const char* config_json, char** out_svg) {
  if (!config_json || !out_svg) return fail(FK_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    json cfg = json::parse(config_json);
    std::string svg = render_svg(generate_svg_paths(generate_config_from_json(cfg)));
    *out_svg = dup_string(svg);
    if (!*out_svg) return fail(FK_ERR_INTERNAL, "allocation failed");
    return FK_OK;
  });
}

}  // extern "C"
