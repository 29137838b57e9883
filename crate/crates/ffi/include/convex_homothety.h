#ifndef CONVEX_HOMOTHETY_H
#define CONVEX_HOMOTHETY_H

/* Generated by cbindgen from crates/ffi/src; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ChStatus {
  CH_STATUS_OK = 0,
  CH_STATUS_NULL_POINTER = 1,
  CH_STATUS_INVALID_ARGUMENT = 2,
  CH_STATUS_DIMENSION_MISMATCH = 3,
  CH_STATUS_EMPTY_INPUT = 4,
  CH_STATUS_SINGLETON_INPUT = 5,
  CH_STATUS_NOT_ORTHONORMAL = 6,
  CH_STATUS_DEPENDENT_INPUT = 7,
  CH_STATUS_PARSE = 8,
  CH_STATUS_BUFFER_TOO_SMALL = 9,
  CH_STATUS_NUMERICAL = 10,
  CH_STATUS_PANIC = 11,
} ChStatus;

// Opaque orthonormal frame handle.
typedef struct ChFrame ChFrame;

// Opaque polytope handle.
typedef struct ChPolytope ChPolytope;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null after a
// successful call. Valid until the next call into this library.
const char *ch_last_error_message(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void ch_string_free(char *s);

// Convex hull of `count` points of dimension `dim` given row-major.
//
// # Safety
// `coords` must point to `count * dim` doubles; `out` must be writable.
enum ChStatus ch_polytope_new(size_t dim,
                              const double *coords,
                              size_t count,
                              struct ChPolytope **out);

// # Safety
// `p` must be null or a handle from this library not yet freed.
void ch_polytope_free(struct ChPolytope *p);

// Ambient dimension, or 0 for a null handle.
//
// # Safety
// `p` must be null or a live handle.
size_t ch_polytope_dim(const struct ChPolytope *p);

// Number of vertices, or 0 for a null handle.
//
// # Safety
// `p` must be null or a live handle.
size_t ch_polytope_vertex_count(const struct ChPolytope *p);

// Copies the vertices in canonical order, row-major, into `out`, which
// holds `capacity` doubles and needs `count * dim`.
//
// # Safety
// `p` must be a live handle; `out` must be writable for `capacity` doubles.
enum ChStatus ch_polytope_vertices(const struct ChPolytope *p, double *out, size_t capacity);

// Parses a `{"dim": n, "vertices": [...]}` document.
//
// # Safety
// `json` must be a nul-terminated string; `out` must be writable.
enum ChStatus ch_polytope_from_json(const char *json, struct ChPolytope **out);

// Canonical document for `p`; free the result with [`ch_string_free`].
//
// # Safety
// `p` must be a live handle; `out` must be writable.
enum ChStatus ch_polytope_to_json(const struct ChPolytope *p, char **out);

// Hull of `count` standard normal samples in dimension `dim`.
//
// # Safety
// `out` must be writable.
enum ChStatus ch_polytope_random(size_t dim, size_t count, uint64_t seed, struct ChPolytope **out);

// # Safety
// `a` and `b` must be live handles; `out` must be writable.
enum ChStatus ch_polytope_minkowski(const struct ChPolytope *a,
                                    const struct ChPolytope *b,
                                    struct ChPolytope **out);

// # Safety
// `p` must be a live handle; `out` must be writable.
enum ChStatus ch_polytope_negate(const struct ChPolytope *p, struct ChPolytope **out);

// Orthogonal projection of `p` in the coordinates of `frame`.
//
// # Safety
// `p` and `frame` must be live handles; `out` must be writable.
enum ChStatus ch_polytope_project(const struct ChPolytope *p,
                                  const struct ChFrame *frame,
                                  struct ChPolytope **out);

// Support value `max u.v` and the size of the face attaining it.
//
// # Safety
// `p` must be a live handle; `direction` must hold `dim` doubles; the
// outputs must be writable.
enum ChStatus ch_polytope_support(const struct ChPolytope *p,
                                  const double *direction,
                                  size_t dim,
                                  double *out_value,
                                  size_t *out_face_size);

// Frame from `sub_dim` orthonormal rows of length `ambient_dim`.
//
// # Safety
// `rows` must hold `sub_dim * ambient_dim` doubles; `out` must be writable.
enum ChStatus ch_frame_new(size_t ambient_dim,
                           const double *rows_ptr,
                           size_t sub_dim,
                           struct ChFrame **out);

// Orthonormal frame spanning `count` linearly independent vectors.
//
// # Safety
// `vectors` must hold `count * ambient_dim` doubles; `out` must be writable.
enum ChStatus ch_frame_span(size_t ambient_dim,
                            const double *vectors,
                            size_t count,
                            struct ChFrame **out);

// Seeded random `m`-dimensional frame in `R^n`.
//
// # Safety
// `out` must be writable.
enum ChStatus ch_frame_random(size_t n, size_t m, uint64_t seed, struct ChFrame **out);

// # Safety
// `f` must be null or a handle from this library not yet freed.
void ch_frame_free(struct ChFrame *f);

// Looks for `a = z + lambda * b`. On success `*out_found` says whether a
// homothety exists; when it does, `lambda` and the `dim` entries of `z`
// are written.
//
// # Safety
// `a` and `b` must be live handles; `out_z` must hold `dim` doubles; the
// other outputs must be writable.
enum ChStatus ch_detect_homothety(const struct ChPolytope *a,
                                  const struct ChPolytope *b,
                                  double tol,
                                  bool *out_found,
                                  double *out_lambda,
                                  double *out_z);

// Number of exposed diameters of `p`.
//
// # Safety
// `p` must be a live handle; `out` must be writable.
enum ChStatus ch_exposed_diameter_count(const struct ChPolytope *p, size_t *out);

// Number of antipodally exposed vertices of `p`.
//
// # Safety
// `p` must be a live handle; `out` must be writable.
enum ChStatus ch_antipodal_count(const struct ChPolytope *p, size_t *out);

// Projection check over `samples` random `m`-planes. Writes the JSON
// report to `out_json` and, when `out_passed` is non-null, the verdict.
//
// # Safety
// `a` and `b` must be live handles; `out_json` must be writable.
enum ChStatus ch_verify_theorem1(const struct ChPolytope *a,
                                 const struct ChPolytope *b,
                                 size_t m,
                                 size_t samples,
                                 uint64_t seed,
                                 bool *out_passed,
                                 char **out_json);

// As [`ch_verify_theorem1`] over `m`-planes containing `subspace`.
//
// # Safety
// `a`, `b` and `subspace` must be live handles; `out_json` must be writable.
enum ChStatus ch_verify_corollary1(const struct ChPolytope *a,
                                   const struct ChPolytope *b,
                                   const struct ChFrame *subspace,
                                   size_t m,
                                   size_t samples,
                                   uint64_t seed,
                                   bool *out_passed,
                                   char **out_json);

// Every vertex of `p` is antipodally exposed.
//
// # Safety
// `p` must be a live handle; `out_json` must be writable.
enum ChStatus ch_verify_theorem2(const struct ChPolytope *p, bool *out_passed, char **out_json);

// No two exposed diameters of `p` are parallel.
//
// # Safety
// `p` must be a live handle; `out_json` must be writable.
enum ChStatus ch_verify_no_parallel_diameters(const struct ChPolytope *p,
                                              bool *out_passed,
                                              char **out_json);

// Exposed diameters of `b` are the images of those of `a`.
//
// # Safety
// `a` and `b` must be live handles; `out_json` must be writable.
enum ChStatus ch_verify_diameter_transfer(const struct ChPolytope *a,
                                          const struct ChPolytope *b,
                                          bool *out_passed,
                                          char **out_json);

// Paraboloids `x^2 + y^2 <= z` and `2x^2 + y^2 <= z` over random planes.
//
// # Safety
// `out_json` must be writable.
enum ChStatus ch_verify_example1(size_t samples, uint64_t seed, bool *out_passed, char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CONVEX_HOMOTHETY_H */
