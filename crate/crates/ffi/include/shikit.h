#ifndef SHIKIT_H
#define SHIKIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ShikitStatus {
  SHIKIT_STATUS_OK = 0,
  SHIKIT_STATUS_NULL_POINTER = 1,
  SHIKIT_STATUS_DOMAIN = 2,
  SHIKIT_STATUS_OVERFLOW = 3,
  SHIKIT_STATUS_NON_CONVERGENCE = 4,
  SHIKIT_STATUS_INVALID_CONFIG = 5,
  SHIKIT_STATUS_ORDER_OUT_OF_RANGE = 6,
  SHIKIT_STATUS_TOLERANCE_NOT_MET = 7,
  SHIKIT_STATUS_UNKNOWN_CASE = 8,
  SHIKIT_STATUS_INVALID_GRID = 9,
  SHIKIT_STATUS_INVALID_UTF8 = 10,
  SHIKIT_STATUS_PANIC = 11,
} ShikitStatus;

typedef enum ShikitMethod {
  SHIKIT_METHOD_SERIES = 0,
  SHIKIT_METHOD_CLOSED_FORM = 1,
} ShikitMethod;

// Which polynomial to render.
typedef enum ShikitPolyPart {
  // Coefficient list of the cosh multiplier, e.g. `[0,-2]`.
  SHIKIT_POLY_PART_COSH = 0,
  // Coefficient list of the sinh multiplier, e.g. `[2,0,1]`.
  SHIKIT_POLY_PART_SINH = 1,
  // Human-readable formula.
  SHIKIT_POLY_PART_FORMULA = 2,
} ShikitPolyPart;

typedef enum ShikitBoundKind {
  SHIKIT_BOUND_KIND_LOWER = 0,
  SHIKIT_BOUND_KIND_UPPER = 1,
} ShikitBoundKind;

// Opaque closed form of `Shi^(m)`.
typedef struct ShikitClosedForm ShikitClosedForm;

// Opaque rational `tanh` bound.
typedef struct ShikitTanhBound ShikitTanhBound;

typedef struct ShikitEvalConfig {
  double rel_tol;
  size_t max_terms;
  double z_overflow_cap;
} ShikitEvalConfig;

typedef struct ShikitEval {
  double value;
  double abs_err_estimate;
  size_t terms_used;
  enum ShikitMethod method;
} ShikitEval;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version, a static NUL-terminated string.
const char *shikit_version(void);

// Message for the last failed call on this thread, or null. Valid until
// the next library call on the same thread.
const char *shikit_last_error_message(void);

struct ShikitEvalConfig shikit_default_config(void);

// # Safety
// `out` must be valid for writing one `double`.
enum ShikitStatus shikit_sinhc(double z, double *out);

// `cfg` may be null for the defaults.
//
// # Safety
// `cfg` must be null or valid; `out` must be valid for writing.
enum ShikitStatus shikit_shi(double z, const struct ShikitEvalConfig *cfg, struct ShikitEval *out);

// `m`-th derivative of Shi, `0 <= m <= 64`. `cfg` may be null.
//
// # Safety
// `cfg` must be null or valid; `out` must be valid for writing.
enum ShikitStatus shikit_shi_derivative(uint32_t m,
                                        double z,
                                        const struct ShikitEvalConfig *cfg,
                                        struct ShikitEval *out);

// Shi by adaptive quadrature of sinh(t)/t.
//
// # Safety
// `out` must be valid for writing one `double`.
enum ShikitStatus shikit_quadrature_shi(double z, double tol, double *out);

// Closed form of `Shi^(m)`, `1 <= m <= 64`; null on error.
struct ShikitClosedForm *shikit_closed_form_new(uint32_t m);

// # Safety
// `cf` must be null or a handle from `shikit_closed_form_new` not yet freed.
void shikit_closed_form_free(struct ShikitClosedForm *cf);

// # Safety
// `cf` must be a live handle; `out` must be valid for writing.
enum ShikitStatus shikit_closed_form_eval(const struct ShikitClosedForm *cf, double z, double *out);

// # Safety
// `cf` must be a live handle.
uint32_t shikit_closed_form_order(const struct ShikitClosedForm *cf);

// Renders part of a closed form as a new string (free with
// `shikit_string_free`); null on error.
//
// # Safety
// `cf` must be a live handle.
char *shikit_closed_form_string(const struct ShikitClosedForm *cf, enum ShikitPolyPart part);

// Rational tanh bound of order `m >= 3`; null on error.
struct ShikitTanhBound *shikit_tanh_bound_new(uint32_t m);

// # Safety
// `b` must be null or a handle from `shikit_tanh_bound_new` not yet freed.
void shikit_tanh_bound_free(struct ShikitTanhBound *b);

// # Safety
// `b` must be a live handle; `out` must be valid for writing.
enum ShikitStatus shikit_tanh_bound_eval(const struct ShikitTanhBound *b, double z, double *out);

// # Safety
// `b` must be a live handle; `out` must be valid for writing.
enum ShikitStatus shikit_tanh_bound_kind(const struct ShikitTanhBound *b,
                                         enum ShikitBoundKind *out);

// Numerator (`numerator = true`) or denominator coefficients as a new
// string like `[0,3,0,1]`; null on error.
//
// # Safety
// `b` must be a live handle.
char *shikit_tanh_bound_poly(const struct ShikitTanhBound *b, bool numerator);

// # Safety
// `lower` and `upper` must be valid for writing.
enum ShikitStatus shikit_cosh_bounds(double z, double *lower, double *upper);

// # Safety
// `lower` and `upper` must be valid for writing.
enum ShikitStatus shikit_shi_envelope(double z, double *lower, double *upper);

// Runs verification on the default grids and returns the JSON report
// document through `out_json` (free with `shikit_string_free`).
//
// `case_id` selects one case; null or `"all"` runs the whole catalog.
// `out_failures`, if non-null, receives the number of failed cases.
//
// # Safety
// `case_id` must be null or a NUL-terminated string; `out_json` must be
// valid for writing; `out_failures` null or valid.
enum ShikitStatus shikit_verify_json(const char *case_id,
                                     uint64_t seed,
                                     char **out_json,
                                     size_t *out_failures);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void shikit_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SHIKIT_H */
