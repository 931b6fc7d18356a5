#ifndef GDCONF_H
#define GDCONF_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Which axiom package to verify.
 */
typedef enum GdcCheckKind {
  /**
   * Super Novikov axioms of the ∘-product.
   */
  GdcCheckNovikov = 0,
  /**
   * Super Lie axioms of the bracket.
   */
  GdcCheckLie = 1,
  /**
   * Novikov + Lie + the five-term compatibility identity.
   */
  GdcCheckGd = 2,
} GdcCheckKind;

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum GdcStatus {
  /**
   * Success; all requested checks passed.
   */
  GdcOk = 0,
  /**
   * The computation ran but found a violation or certificate.
   */
  GdcViolation = 1,
  /**
   * Malformed input, unknown name, or unusable parameters.
   */
  GdcInputError = 2,
  /**
   * A required pointer argument was NULL.
   */
  GdcNullPointer = 3,
  /**
   * A string argument was not valid UTF-8.
   */
  GdcUtf8Error = 4,
  /**
   * Internal panic; this is a bug worth reporting.
   */
  GdcInternal = 5,
} GdcStatus;

/**
 * Opaque algebra handle.
 */
typedef struct GdcAlgebra GdcAlgebra;

/**
 * Truncation window parameters for envelope-based entry points.
 */
typedef struct GdcWindow {
  /**
   * Highest derivative order kept in the window (D ≥ 1).
   */
  uint32_t diff_order;
  /**
   * Highest monomial degree kept in the window (R ≥ 1).
   */
  uint32_t degree;
  /**
   * Highest bracket nesting depth (B).
   */
  uint32_t depth;
} GdcWindow;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parse an algebra definition from structured text. On success writes a
 * fresh handle to `out`; release it with [`gdc_algebra_free`].
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum GdcStatus gdc_algebra_parse(const char *text, struct GdcAlgebra **out);

/**
 * Load a built-in fixture (`heisenberg3`, `virasoro-source`, `novikov2`,
 * `zero1`, `supernov2`) or a file path.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` a valid pointer.
 */
enum GdcStatus gdc_algebra_load(const char *spec, struct GdcAlgebra **out);

/**
 * Release an algebra handle. NULL is ignored.
 *
 * # Safety
 * `alg` must come from `gdc_algebra_parse`/`gdc_algebra_load` and must not
 * be used afterwards.
 */
void gdc_algebra_free(struct GdcAlgebra *alg);

/**
 * Dimension of the underlying space, or −1 for NULL.
 *
 * # Safety
 * `alg` must be a live handle or NULL.
 */
int32_t gdc_algebra_dim(const struct GdcAlgebra *alg);

/**
 * Deterministic textual form of the algebra (inverse of parsing).
 *
 * # Safety
 * `alg` must be a live handle; `out` receives a string to free with
 * [`gdc_string_free`].
 */
enum GdcStatus gdc_algebra_print(const struct GdcAlgebra *alg, char **out);

/**
 * Run an axiom check; `GDC_OK` means every identity holds exactly.
 * A human-readable summary is written to `report` when non-NULL.
 *
 * # Safety
 * `alg` must be a live handle; `report` may be NULL or a valid out-pointer.
 */
enum GdcStatus gdc_check(const struct GdcAlgebra *alg, enum GdcCheckKind kind, char **report);

/**
 * Dimension of the exceptionality kernel inside the given window, written
 * to `kernel_dim`. `GDC_VIOLATION` means the kernel is nonzero (the
 * algebra is certified exceptional); `GDC_OK` means no certificate was
 * found at this window.
 *
 * # Safety
 * `alg` must be a live handle; `window` and `kernel_dim` must be valid.
 */
enum GdcStatus gdc_speciality(const struct GdcAlgebra *alg,
                              const struct GdcWindow *window,
                              uint32_t *kernel_dim);

/**
 * Run a full pipeline by subcommand name with the same semantics as the
 * `gdconf` binary. The deterministic machine report is written to
 * `report`; the return value mirrors the process exit code
 * (`GDC_OK` / `GDC_VIOLATION` / `GDC_INPUT_ERROR`).
 *
 * # Safety
 * `command` and `algebra_spec` must be NUL-terminated strings (the latter
 * may be NULL for commands that take no algebra); `window` may be NULL for
 * the default (D=2, R=4, B=2); `report` may be NULL.
 */
enum GdcStatus gdc_run(const char *command,
                       const char *algebra_spec,
                       const struct GdcWindow *window,
                       char **report);

/**
 * Release a string produced by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from a gdconf entry point and must not be used afterwards.
 */
void gdc_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* GDCONF_H */
