#ifndef MONOLAT_H
#define MONOLAT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of a C API call. Mirrors the CLI exit codes.
 */
typedef enum MonolatStatus {
  /**
   * Success: the check holds / the sequent is derivable.
   */
  MonolatStatus_Ok = 0,
  /**
   * A definite negative: countermodel found or not derivable.
   */
  MonolatStatus_Refuted = 1,
  /**
   * A search bound was exhausted before an answer was reached.
   */
  MonolatStatus_BoundExhausted = 2,
  /**
   * Malformed input (syntax, tables, encoding).
   */
  MonolatStatus_InputError = 3,
  /**
   * A required pointer argument was null.
   */
  MonolatStatus_NullPointer = 4,
} MonolatStatus;

/**
 * A finite algebra with box/diamond tables. Opaque.
 */
typedef struct MonolatAlgebra MonolatAlgebra;

/**
 * A checked derivation. Opaque.
 */
typedef struct MonolatDerivation MonolatDerivation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *monolat_last_error(void);

/**
 * Frees a string returned by this library.
 *
 * # Safety
 * `s` must come from a monolat function and not be freed twice.
 */
void monolat_string_free(char *s);

/**
 * Parses an algebra (with box/diamond tables) from its JSON encoding.
 *
 * # Safety
 * `json` must be a valid C string; `out` must be a valid pointer.
 */
enum MonolatStatus monolat_algebra_from_json(const char *json, struct MonolatAlgebra **out);

/**
 * # Safety
 * `a` must come from `monolat_algebra_from_json` and not be freed twice.
 */
void monolat_algebra_free(struct MonolatAlgebra *a);

/**
 * Number of elements, or 0 for a null handle.
 *
 * # Safety
 * `a` must be null or a live handle.
 */
uintptr_t monolat_algebra_size(const struct MonolatAlgebra *a);

/**
 * Checks the modal axioms (L1–L5, ⋆, and L6 where applicable).
 *
 * # Safety
 * `a` must be a live handle.
 */
enum MonolatStatus monolat_check_m_axioms(const struct MonolatAlgebra *a);

/**
 * Tests a modal equation "α ≈ β" (or "α ≤ β") against the algebra.
 *
 * # Safety
 * `a` must be a live handle and `equation` a valid C string.
 */
enum MonolatStatus monolat_check_equation(const struct MonolatAlgebra *a, const char *equation);

/**
 * Translates between the one-variable first-order and modal languages.
 * `to_modal` nonzero maps ∀ ↦ □, ∃ ↦ ◇; zero goes the other way.
 *
 * # Safety
 * `formula` must be a valid C string; `out` receives an owned string to be
 * released with `monolat_string_free`.
 */
enum MonolatStatus monolat_translate(const char *formula, int to_modal, char **out);

/**
 * Backward proof search for a sequent "Γ |- Δ". On success `out` (if
 * non-null) receives a derivation handle.
 *
 * # Safety
 * `sequent` must be a valid C string; `out` may be null.
 */
enum MonolatStatus monolat_prove(const char *sequent,
                                 int calculus,
                                 uint32_t contraction_budget,
                                 struct MonolatDerivation **out);

/**
 * # Safety
 * `d` must come from `monolat_prove` and not be freed twice.
 */
void monolat_derivation_free(struct MonolatDerivation *d);

/**
 * Maximum quantifier-rule applications on any branch, or -1 for null.
 *
 * # Safety
 * `d` must be null or a live handle.
 */
int monolat_derivation_md(const struct MonolatDerivation *d);

/**
 * Renders the derivation as indented UTF-8 text.
 *
 * # Safety
 * `d` must be a live handle; `out` receives an owned string.
 */
enum MonolatStatus monolat_derivation_text(const struct MonolatDerivation *d, char **out);

/**
 * Extracts an interpolant for the derivation's end sequent. `partition`
 * assigns each antecedent position (in the derivation's displayed order):
 * nonzero = Γ side, zero = Π side. On success `out` receives the
 * interpolant rendered as text.
 *
 * # Safety
 * `d` must be a live handle; `partition` must point at `partition_len`
 * bytes; `out` receives an owned string.
 */
enum MonolatStatus monolat_interpolate(const struct MonolatDerivation *d,
                                       const uint8_t *partition,
                                       uintptr_t partition_len,
                                       char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MONOLAT_H */
