#ifndef QUADPROMPT_H
#define QUADPROMPT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QpStatus {
  QP_STATUS_OK = 0,
  QP_STATUS_NULL_POINTER = 1,
  QP_STATUS_INVALID_ARGUMENT = 2,
  QP_STATUS_EMPTY_MASK = 3,
  QP_STATUS_DIM_MISMATCH = 4,
  QP_STATUS_DEGENERATE = 5,
  QP_STATUS_PARSE = 6,
  QP_STATUS_IO = 7,
  QP_STATUS_PANIC = 8,
} QpStatus;

typedef enum QpPromptKind {
  QP_PROMPT_KIND_EXTREME = 0,
  QP_PROMPT_KIND_MAJOR_MINOR = 1,
  /**
   * Tight bounding box of the mask.
   */
  QP_PROMPT_KIND_BOX = 2,
  /**
   * Box derived from generated extreme points.
   */
  QP_PROMPT_KIND_EXTREME_BOX = 3,
  QP_PROMPT_KIND_REGION_CLICK = 4,
} QpPromptKind;

typedef enum QpRole {
  QP_ROLE_TOP = 0,
  QP_ROLE_BOTTOM = 1,
  QP_ROLE_LEFT = 2,
  QP_ROLE_RIGHT = 3,
  QP_ROLE_MAJOR = 4,
  QP_ROLE_MINOR = 5,
  QP_ROLE_BOX_CORNER_A = 6,
  QP_ROLE_BOX_CORNER_B = 7,
  QP_ROLE_POSITIVE = 8,
  QP_ROLE_NEGATIVE = 9,
} QpRole;

typedef enum QpSessionStrategy {
  QP_SESSION_STRATEGY_REGION_ITERATIVE = 0,
  QP_SESSION_STRATEGY_BOX = 1,
  QP_SESSION_STRATEGY_EXTREME_REFINE = 2,
  QP_SESSION_STRATEGY_MAJOR_MINOR_REFINE = 3,
} QpSessionStrategy;

typedef struct QpMask QpMask;

typedef struct QpPromptSet QpPromptSet;

/**
 * Scoring weights. A negative `top_k` or `dilation_radius` selects the
 * size-dependent default.
 */
typedef struct QpScoring {
  double w_main;
  double w_ortho;
  int64_t top_k;
  int64_t dilation_radius;
} QpScoring;

typedef struct QpPoint {
  uint32_t x;
  uint32_t y;
  enum QpRole role;
} QpPoint;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *qp_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *qp_version(void);

/**
 * Mask from `width * height` row-major bytes; nonzero is foreground.
 *
 * # Safety
 * `data` must point to `len` readable bytes and `out` to writable storage.
 */
enum QpStatus qp_mask_from_bytes(uint32_t width,
                                 uint32_t height,
                                 const uint8_t *data,
                                 size_t len,
                                 struct QpMask **out);

/**
 * Load an 8-bit grayscale PNG mask (nonzero is foreground).
 *
 * # Safety
 * `path` must be a NUL-terminated UTF-8 string and `out` writable.
 */
enum QpStatus qp_mask_load_png(const char *path, struct QpMask **out);

/**
 * # Safety
 * `mask` must come from this library and not be used afterwards. NULL is a no-op.
 */
void qp_mask_free(struct QpMask *mask);

/**
 * # Safety
 * `mask` must be a live handle; `width`/`height` writable.
 */
enum QpStatus qp_mask_dims(const struct QpMask *mask, uint32_t *width, uint32_t *height);

/**
 * Copy the mask into `width * height` bytes (1 foreground, 0 background).
 *
 * # Safety
 * `buf` must point to `len` writable bytes.
 */
enum QpStatus qp_mask_copy_bytes(const struct QpMask *mask, uint8_t *buf, size_t len);

/**
 * # Safety
 * `mask` must be a live handle and `out` writable.
 */
enum QpStatus qp_mask_area(const struct QpMask *mask, size_t *out);

/**
 * # Safety
 * `a` and `b` must be live handles and `out` writable.
 */
enum QpStatus qp_iou(const struct QpMask *a, const struct QpMask *b, double *out);

/**
 * # Safety
 * `mask` must be a live handle and `out` writable.
 */
enum QpStatus qp_concavity(const struct QpMask *mask, double *out);

/**
 * Rasterized convex hull of `mask`, as a new mask handle.
 *
 * # Safety
 * `mask` must be a live handle and `out` writable.
 */
enum QpStatus qp_canvas_target(const struct QpMask *mask, struct QpMask **out);

struct QpScoring qp_scoring_default(void);

/**
 * Generate a prompt set for `mask`. `scoring` may be NULL for defaults.
 *
 * # Safety
 * `mask` must be a live handle, `scoring` NULL or valid, `out` writable.
 */
enum QpStatus qp_generate(const struct QpMask *mask,
                          enum QpPromptKind kind,
                          const struct QpScoring *scoring,
                          uint64_t seed,
                          bool deterministic,
                          struct QpPromptSet **out);

/**
 * # Safety
 * `ps` must come from this library and not be used afterwards. NULL is a no-op.
 */
void qp_prompt_set_free(struct QpPromptSet *ps);

/**
 * # Safety
 * `ps` must be a live handle and `out` writable.
 */
enum QpStatus qp_prompt_set_len(const struct QpPromptSet *ps, size_t *out);

/**
 * # Safety
 * `ps` must be a live handle and `out` writable.
 */
enum QpStatus qp_prompt_set_point(const struct QpPromptSet *ps, size_t index, struct QpPoint *out);

/**
 * Prompt set as a JSON object; free the string with [`qp_string_free`].
 *
 * # Safety
 * `ps` must be a live handle and `out` writable.
 */
enum QpStatus qp_prompt_set_to_json(const struct QpPromptSet *ps, char **out);

/**
 * # Safety
 * `s` must come from this library. NULL is a no-op.
 */
void qp_string_free(char *s);

/**
 * Sketch a mask from an extreme, major/minor or box prompt set.
 *
 * # Safety
 * `ps` must be a live handle and `out` writable.
 */
enum QpStatus qp_sketch(const struct QpPromptSet *ps,
                        uint32_t width,
                        uint32_t height,
                        struct QpMask **out);

/**
 * Draw a corrective click from the disagreement of `gt` and `pred`.
 * `*found` is false when the masks agree everywhere.
 *
 * # Safety
 * `gt` and `pred` must be live handles; `out` and `found` writable.
 */
enum QpStatus qp_sample_refinement(const struct QpMask *gt,
                                   const struct QpMask *pred,
                                   uint64_t seed,
                                   struct QpPoint *out,
                                   bool *found);

/**
 * Simulate one interactive session against the perturbed-oracle segmenter
 * and report the final IoU.
 *
 * # Safety
 * `gt` must be a live handle and `final_iou` writable.
 */
enum QpStatus qp_run_session(const struct QpMask *gt,
                             enum QpSessionStrategy strategy,
                             uint32_t budget,
                             uint64_t seed,
                             bool oracle_selection,
                             double *final_iou);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QUADPROMPT_H */
