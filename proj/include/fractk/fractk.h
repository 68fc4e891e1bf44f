/* fractk -- snowflake prefractal geometry, thickness certification and
 * smoothness-index calculus behind a plain C interface.
 *
 * All functions return fk_status; outputs are written through pointers.
 * String outputs are heap-allocated and must be released with
 * fk_string_free. Handles are opaque and must be released with their
 * matching *_free function. On failure, fk_last_error() returns a
 * human-readable detail message for the calling thread.
 */
#ifndef FRACTK_H
#define FRACTK_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define FK_API __declspec(dllexport)
#else
#define FK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fk_status {
  FK_OK = 0,
  FK_ERR_INVALID_ARGUMENT = 1,
  FK_ERR_UNSATISFIED = 2, /* verification ran, some check failed */
  FK_ERR_CAP_EXCEEDED = 3,
  FK_ERR_IO = 4,
  FK_ERR_INTERNAL = 5
} fk_status;

typedef struct fk_level fk_level; /* one prefractal level of either family */

FK_API const char* fk_version(void);
FK_API const char* fk_status_name(fk_status status);
FK_API const char* fk_last_error(void);
FK_API void fk_string_free(char* s);

/* ---- prefractal levels ------------------------------------------------ */

FK_API fk_status fk_classical_create(double beta, int level, fk_level** out);
FK_API fk_status fk_square_create(int level, fk_level** out);
FK_API void fk_level_free(fk_level* level);

/* which: classical "inner"|"outer"|"collar"; square also "boundary".
 * Edge counts are 3*4^j / 6*4^j / 4*8^j per family and side. */
FK_API fk_status fk_level_edge_count(const fk_level* level, const char* which,
                                     long long* out);
/* Geometry document (polygon / cell / collar schema) as JSON text. */
FK_API fk_status fk_level_geometry_json(const fk_level* level, const char* which,
                                        char** out_json);
FK_API fk_status fk_level_area(const fk_level* level, const char* which, double* out);

/* ---- closed-form scalars ---------------------------------------------- */

FK_API fk_status fk_xi_of_beta(double beta, double* out);
FK_API fk_status fk_classical_dimension(double beta, double* out);
FK_API fk_status fk_classical_collar_area(double beta, int level, double* out);
FK_API fk_status fk_square_collar_area(int level, double* out);
FK_API fk_status fk_conjugate_exponent(double p, double* out);
FK_API fk_status fk_density_window(int n, double d, double p, int m, double* lo,
                                   double* hi);
FK_API fk_status fk_point_space_dimension(int n, double p, double s, long long* out);
FK_API fk_status fk_trace_codomain_size(int n, int m, long long* out);

/* ---- JSON document entry points ---------------------------------------- */

/* config: {"family","beta","level","which"} -> geometry JSON */
FK_API fk_status fk_generate(const char* config_json, char** out_json);

/* config: {"kind":"cond"|"thickness"|"ball"|"interior","family","beta",
 * "level","samples","seed","profile","stability_level"} -> report JSON.
 * Returns FK_ERR_UNSATISFIED (with the full report still written) when the
 * verification ran but some check failed. */
FK_API fk_status fk_verify(const char* config_json, char** out_json);

/* config: {"kind":"dimension"|"ring"|"collar"|"convergence",...} */
FK_API fk_status fk_estimate(const char* config_json, char** out_json);

/* kind: "nullity"|"q1"|"density"|"d0"|"kernel-window"; params per kind.
 * Output: {"answer","theorem","window","reason"}. */
FK_API fk_status fk_classify(const char* kind, const char* params_json,
                             char** out_json);

/* Render the geometry described by a generate config to an SVG document. */
FK_API fk_status fk_render_svg(const char* config_json, char** out_svg);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* FRACTK_H */
