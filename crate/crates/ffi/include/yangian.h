#ifndef YANGIAN_H
#define YANGIAN_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum YgOperatorKind {
  YG_OPERATOR_KIND_RAISING = 0,
  YG_OPERATOR_KIND_LOWERING = 1,
} YgOperatorKind;

/**
 * Status codes; the nonzero values match the exit codes of the `yangian`
 * binary where they overlap.
 */
typedef enum YgStatus {
  YG_STATUS_OK = 0,
  YG_STATUS_RELATION_FAILED = 1,
  YG_STATUS_INVALID_ARGUMENT = 2,
  YG_STATUS_CAP_EXCEEDED = 3,
  YG_STATUS_RESONANCE = 4,
  YG_STATUS_KERNEL_ERROR = 5,
  YG_STATUS_NULL_POINTER = 6,
  YG_STATUS_PANIC = 7,
} YgStatus;

/**
 * A fixed-point basis.
 */
typedef struct YgBasis YgBasis;

/**
 * One generic specialization of `(h1, h2, chi)`.
 */
typedef struct YgParams YgParams;

/**
 * Raising and lowering operators over the rationals.
 */
typedef struct YgRep YgRep;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread; valid until the next
 * failing call on the same thread.
 */
const char *yg_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void yg_string_free(char *s);

/**
 * Plane partitions with at most `max_boxes` boxes.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum YgStatus yg_basis_c3(size_t max_boxes, struct YgBasis **out);

/**
 * Pyramid partitions of length `m` in one sector with at most `max_stones`
 * stones.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum YgStatus yg_basis_conifold(uint32_t m,
                                int64_t sector,
                                size_t max_stones,
                                struct YgBasis **out);

/**
 * # Safety
 * `b` must be null or a live basis handle.
 */
size_t yg_basis_dim(const struct YgBasis *b);

/**
 * # Safety
 * `b` must be null or a live basis handle.
 */
size_t yg_basis_num_levels(const struct YgBasis *b);

/**
 * Number of fixed points on level `n`, zero beyond the top.
 *
 * # Safety
 * `b` must be null or a live basis handle.
 */
size_t yg_basis_level_size(const struct YgBasis *b, size_t n);

/**
 * The labels of all levels as JSON.
 *
 * # Safety
 * `b` must be a live basis handle and `out` a valid pointer.
 */
enum YgStatus yg_basis_labels_json(const struct YgBasis *b, char **out);

/**
 * # Safety
 * `b` must be null or a handle not freed before.
 */
void yg_basis_free(struct YgBasis *b);

/**
 * Parameters from rational strings such as `"3/7"`; rejects resonant
 * values.
 *
 * # Safety
 * The strings must be valid C strings and `out` a valid pointer.
 */
enum YgStatus yg_params_new(const char *h1, const char *h2, const char *chi, struct YgParams **out);

/**
 * Random generic parameters from a seed.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum YgStatus yg_params_random(uint64_t seed, struct YgParams **out);

/**
 * # Safety
 * `p` must be null or a handle not freed before.
 */
void yg_params_free(struct YgParams *p);

/**
 * Builds `e_0..e_max_index` and `f_0..f_max_index` over the rationals.
 *
 * # Safety
 * Handles must be live and `out` a valid pointer.
 */
enum YgStatus yg_rep_build(const struct YgBasis *b,
                           const struct YgParams *p,
                           uint32_t max_index,
                           struct YgRep **out);

/**
 * Entry `(row, col)` of the block of an operator on source level `level`,
 * written as `"p/q"`.
 *
 * # Safety
 * `r` must be a live handle and `out` a valid pointer.
 */
enum YgStatus yg_rep_entry(const struct YgRep *r,
                           enum YgOperatorKind kind,
                           uint32_t index,
                           size_t level,
                           size_t row,
                           size_t col,
                           char **out);

/**
 * One operator in the JSON format written by `yangian rep build`.
 *
 * # Safety
 * `r` must be a live handle and `out` a valid pointer.
 */
enum YgStatus yg_rep_operator_json(const struct YgRep *r,
                                   enum YgOperatorKind kind,
                                   uint32_t index,
                                   char **out);

/**
 * # Safety
 * `r` must be null or a handle not freed before.
 */
void yg_rep_free(struct YgRep *r);

/**
 * Runs the relation suite (`relations` is one of `all`, `ef`, `ee`,
 * `serre`, `psi`, `poles`, `shift`) under `count` specializations and
 * writes the JSON report to `report`. Returns `YG_STATUS_RELATION_FAILED`
 * when a relation does not pass; the report is written in that case too.
 *
 * # Safety
 * `params` must point to `count` live handles; `report` may be null.
 */
enum YgStatus yg_check(const struct YgBasis *b,
                       const struct YgParams *const *params,
                       size_t count,
                       uint32_t imax,
                       const char *relations,
                       bool prime_field,
                       char **report);

/**
 * Shift `l` and the shift point written in terms of `chi`, `t` and `q`.
 *
 * # Safety
 * Handles must be live; `l` and `z1` must be valid pointers.
 */
enum YgStatus yg_shift(const struct YgBasis *b, const struct YgParams *p, int64_t *l, char **z1);

/**
 * Shuffle product under `kernel` (`a1`, `jordan:c` or `c3`); `params` is
 * only read by `c3` and may be null otherwise. Inputs use the syntax of
 * `yangian shuffle mul`; the product is written as a JSON
 * exponent-coefficient map.
 *
 * # Safety
 * Strings must be valid C strings; `out` must be a valid pointer.
 */
enum YgStatus yg_shuffle_mul(const char *kernel,
                             const struct YgParams *params,
                             const char *left,
                             const char *right,
                             char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* YANGIAN_H */
