#ifndef NEWTON_SPECTRUM_H
#define NEWTON_SPECTRUM_H

/* Generated by cbindgen from the newton-spectrum-ffi crate; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result of every call. Out-parameters are valid only on `NS_STATUS_OK`.
 */
typedef enum {
  NS_STATUS_OK = 0,
  NS_STATUS_NULL_POINTER = 1,
  NS_STATUS_INVALID_UTF8 = 2,
  NS_STATUS_PARSE_ERROR = 3,
  NS_STATUS_DOMAIN_ERROR = 4,
  NS_STATUS_BUDGET_EXCEEDED = 5,
  NS_STATUS_SHORT_BUFFER = 6,
  NS_STATUS_PANIC = 7,
} NsStatus;

/**
 * Opaque diagram handle; release with `ns_diagram_free`.
 */
typedef struct NsDiagram NsDiagram;

/**
 * Opaque spectrum handle; release with `ns_spectrum_free`.
 */
typedef struct NsSpectrum NsSpectrum;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a vertex list `"(0,6) (3,1) (4,0)"` or a term sum
 * `"tr(3,5) + tr(1,1) @ (0,6)"` into a new diagram handle.
 */
NsStatus ns_diagram_parse(const char *spec, NsDiagram **out);

/**
 * Builds the segment diagram from `(0, q)` to `(p, 0)`.
 */
NsStatus ns_diagram_segment(int64_t p, int64_t q, NsDiagram **out);

/**
 * Newton number of the diagram; fails on non-convenient or degenerate ones.
 */
NsStatus ns_diagram_newton_number(const NsDiagram *d, int64_t *out);

/**
 * Twice the lattice area between the chain and the axes.
 */
NsStatus ns_diagram_twice_area_under(const NsDiagram *d, int64_t *out);

/**
 * Renders the canonical vertex form; release with `ns_string_free`.
 */
NsStatus ns_diagram_render(const NsDiagram *d, char **out);

/**
 * Renders the term form; writes NULL for single-vertex diagrams.
 */
NsStatus ns_diagram_term_form(const NsDiagram *d, char **out);

/**
 * Deforms by the `len` lattice points `(xs[i], ys[i])`, yielding a new
 * handle. The input handle stays valid.
 */
NsStatus ns_diagram_deform(const NsDiagram *d,
                           const int64_t *xs,
                           const int64_t *ys,
                           size_t len,
                           NsDiagram **out);

/**
 * Writes true when `d` is a deformation of `base` (every point of `base`
 * lies in the region of `d`).
 */
NsStatus ns_diagram_is_deformation_of(const NsDiagram *d, const NsDiagram *base, bool *out);

/**
 * Releases a diagram handle; NULL is ignored.
 */
void ns_diagram_free(NsDiagram *d);

/**
 * Enumerates every deformation of `tr(p, q)` whose vertices satisfy
 * `x + y >= min_degree` and stores the attained Newton numbers.
 */
NsStatus ns_spectrum_compute(int64_t p, int64_t q, int64_t min_degree, NsSpectrum **out);

/**
 * Number of attained Newton numbers.
 */
NsStatus ns_spectrum_len(const NsSpectrum *s, size_t *out);

/**
 * Copies the attained values in increasing order. With a NULL buffer only
 * `written` is set, to the required length; with a short buffer `written`
 * is set and `NS_STATUS_SHORT_BUFFER` returned.
 */
NsStatus ns_spectrum_values(const NsSpectrum *s, int64_t *buf, size_t cap, size_t *written);

/**
 * Writes true when `nu` is attained.
 */
NsStatus ns_spectrum_contains(const NsSpectrum *s, int64_t nu, bool *out);

/**
 * Renders the lexicographically smallest witness for `nu` in vertex form;
 * writes NULL when `nu` is a gap. Release with `ns_string_free`.
 */
NsStatus ns_spectrum_witness(const NsSpectrum *s, int64_t nu, char **out);

/**
 * Releases a spectrum handle; NULL is ignored.
 */
void ns_spectrum_free(NsSpectrum *s);

/**
 * Predicted attainable spectrum for `x^p + y^q` as a JSON document.
 * Release with `ns_string_free`.
 */
NsStatus ns_report_json(int64_t p, int64_t q, char **out);

/**
 * Runs prediction and enumeration for `x^p + y^q`, writes whether the
 * prediction held, and returns the full comparison as JSON.
 * Release with `ns_string_free`.
 */
NsStatus ns_verify_json(int64_t p, int64_t q, bool *passed, char **out);

/**
 * Releases a string produced by this library; NULL is ignored.
 */
void ns_string_free(char *s);

/**
 * Static library version; do not free.
 */
const char *ns_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NEWTON_SPECTRUM_H */
