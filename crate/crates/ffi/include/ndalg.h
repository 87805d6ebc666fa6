#ifndef NDALG_H
#define NDALG_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum NdStatus {
  ND_STATUS_OK = 0,
  ND_STATUS_NULL_POINTER = 1,
  ND_STATUS_INVALID_UTF8 = 2,
  ND_STATUS_PARSE_ERROR = 3,
  ND_STATUS_INVALID_ARGUMENT = 4,
  ND_STATUS_CHECK_FAILED = 5,
  ND_STATUS_PANIC = 6,
} NdStatus;

typedef enum NdDecision {
  ND_DECISION_CERTIFIED = 0,
  ND_DECISION_REFUTED = 1,
  ND_DECISION_INCONCLUSIVE = 2,
} NdDecision;

// Smooth expression handle.
typedef struct NdExpr NdExpr;

// Generalized function handle.
typedef struct NdGenFn NdGenFn;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL. Owned by the
// library; valid until the next call.
const char *nd_last_error_message(void);

// Parses an expression from its JSON form.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum NdStatus nd_expr_from_json(const char *json, struct NdExpr **out);

// The cutoff ρ.
//
// # Safety
// `out` must be a valid pointer.
enum NdStatus nd_expr_rho(struct NdExpr **out);

// # Safety
// `e` must be a live handle and `out` a valid pointer.
enum NdStatus nd_expr_eval(const struct NdExpr *e, double x, double *out);

// `order`-th derivative as a new handle.
//
// # Safety
// `e` must be a live handle and `out` a valid pointer.
enum NdStatus nd_expr_diff(const struct NdExpr *e, uint32_t order, struct NdExpr **out);

// # Safety
// `e` must be NULL or a handle not yet freed.
void nd_expr_free(struct NdExpr *e);

// Embeds a smooth expression as a constant sequence.
//
// # Safety
// `e` must be a live handle and `out` a valid pointer.
enum NdStatus nd_gf_embed(const struct NdExpr *e, struct NdGenFn **out);

// `J_{a,h} W`.
//
// # Safety
// `w` must be a live handle and `out` a valid pointer.
enum NdStatus nd_gf_apply_jump(const struct NdGenFn *w, double a, double h, struct NdGenFn **out);

// `J_{A,H} W` for `len` pairs `(locations[i], heights[i])`.
//
// # Safety
// `locations` and `heights` must point to `len` doubles each (may be NULL
// when `len` is 0); `w` must be a live handle and `out` a valid pointer.
enum NdStatus nd_gf_apply_multi(const struct NdGenFn *w,
                                const double *locations,
                                const double *heights,
                                uintptr_t len,
                                struct NdGenFn **out);

// `(x, u) ↦ (x, u + epsilon)` applied to `W`.
//
// # Safety
// `w` must be a live handle and `out` a valid pointer.
enum NdStatus nd_gf_vertical_shift(const struct NdGenFn *w, double epsilon, struct NdGenFn **out);

// # Safety
// `w` must be a live handle and `out` a valid pointer.
enum NdStatus nd_gf_derive(const struct NdGenFn *w, uint32_t order, struct NdGenFn **out);

// Value of the `nu`-th representative at `x`.
//
// # Safety
// `w` must be a live handle and `out` a valid pointer.
enum NdStatus nd_gf_eval(const struct NdGenFn *w, uint32_t nu, double x, double *out);

// # Safety
// `w` must be NULL or a handle not yet freed.
void nd_gf_free(struct NdGenFn *w);

// Persistent jump of `W` across `a`, checked on `[window_lo, window_hi]`
// up to `index_cap`. `CheckFailed` if the estimate has not stabilized.
//
// # Safety
// `w` must be a live handle and `out` a valid pointer.
enum NdStatus nd_jump_magnitude(const struct NdGenFn *w,
                                double a,
                                double window_lo,
                                double window_hi,
                                uint32_t index_cap,
                                double *out);

// Checks `D W = F` modulo the ideal with singular set `gamma`.
//
// # Safety
// `gamma` must point to `gamma_len` doubles (may be NULL when 0); handles
// must be live and `out` a valid pointer.
enum NdStatus nd_certify_solution(const struct NdGenFn *w,
                                  const struct NdExpr *rhs,
                                  const double *gamma,
                                  uintptr_t gamma_len,
                                  double window_lo,
                                  double window_hi,
                                  uint32_t index_cap,
                                  enum NdDecision *out);

// Runs a scenario (same JSON as the CLI) and returns the report as a
// newly allocated string, released with [`nd_string_free`].
// `index_cap` of 0 keeps the scenario's own value.
//
// # Safety
// `json` must be a NUL-terminated string; `report` and `decision` valid pointers.
enum NdStatus nd_verify_scenario_json(const char *json,
                                      uint32_t index_cap,
                                      char **report,
                                      enum NdDecision *decision);

// # Safety
// `s` must be NULL or a string returned by this library and not yet freed.
void nd_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NDALG_H */
