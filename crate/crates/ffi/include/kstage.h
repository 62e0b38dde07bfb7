#ifndef KSTAGE_H
#define KSTAGE_H

/* Generated by cbindgen from crates/ffi. Do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes of every fallible call.
 */
typedef enum KsStatus {
  KS_STATUS_OK = 0,
  KS_STATUS_NULL_POINTER = 1,
  KS_STATUS_INVALID_UTF8 = 2,
  KS_STATUS_EMPTY_SEQUENCE = 3,
  KS_STATUS_INVALID_CHARACTER = 4,
  KS_STATUS_CONSTANT_SEQUENCE = 5,
  KS_STATUS_STATE_OUT_OF_RANGE = 6,
  KS_STATUS_INVALID_ARGUMENT = 7,
  KS_STATUS_FORMAT = 8,
  KS_STATUS_BUFFER_TOO_SMALL = 9,
  KS_STATUS_INTERNAL = 10,
} KsStatus;

typedef enum KsPolicy {
  KS_POLICY_ZERO_SINK = 0,
  KS_POLICY_CYCLE = 1,
} KsPolicy;

typedef enum KsObjective {
  KS_OBJECTIVE_MONOMIALS = 0,
  KS_OBJECTIVE_LITERALS = 1,
  KS_OBJECTIVE_GATE_UPPER_BOUND = 2,
} KsObjective;

/**
 * A machine together with the sequence it was built for.
 */
typedef struct KsMachine KsMachine;

/**
 * A parsed binary sequence.
 */
typedef struct KsSequence KsSequence;

/**
 * ANF size metrics summed over all stages.
 */
typedef struct KsCost {
  uint64_t monomial_count;
  uint64_t literal_count;
  uint32_t max_degree;
  uint64_t gate_upper_bound;
} KsCost;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread, or an empty string.
 * The pointer stays valid until the next `ks_*` call on the same thread.
 */
const char *ks_last_error_message(void);

/**
 * Parses a NUL-terminated string of '0'/'1' characters (whitespace ignored).
 *
 * # Safety
 * `text` must be a valid NUL-terminated string and `out` a writable pointer.
 */
enum KsStatus ks_sequence_parse(const char *text, struct KsSequence **out);

/**
 * Builds a sequence from `len` bytes, each 0 or 1.
 *
 * # Safety
 * `bits` must point to `len` readable bytes and `out` must be writable.
 */
enum KsStatus ks_sequence_from_bits(const uint8_t *bits, size_t len, struct KsSequence **out);

/**
 * # Safety
 * `seq` must be null or a handle from a `ks_sequence_*` constructor not yet freed.
 */
void ks_sequence_free(struct KsSequence *seq);

/**
 * Length of the sequence, 0 for a null handle.
 *
 * # Safety
 * `seq` must be null or a live sequence handle.
 */
size_t ks_sequence_length(const struct KsSequence *seq);

/**
 * Hamming weight of the sequence, 0 for a null handle.
 *
 * # Safety
 * `seq` must be null or a live sequence handle.
 */
size_t ks_sequence_weight(const struct KsSequence *seq);

/**
 * Smallest rotation period below the length, or 0 when the sequence is aperiodic.
 *
 * # Safety
 * `seq` must be null or a live sequence handle.
 */
size_t ks_sequence_period(const struct KsSequence *seq);

/**
 * Minimum stage count of any machine generating the sequence.
 *
 * # Safety
 * `seq` must be a live sequence handle and `k` writable.
 */
enum KsStatus ks_min_stages(const struct KsSequence *seq, uint32_t *k);

/**
 * Linear complexity from Berlekamp-Massey.
 *
 * # Safety
 * `seq` must be a live sequence handle and `complexity` writable.
 */
enum KsStatus ks_linear_complexity(const struct KsSequence *seq, size_t *complexity);

/**
 * Synthesizes the canonical minimum-stage machine for `seq`.
 *
 * # Safety
 * `seq` must be a live sequence handle and `out` writable.
 */
enum KsStatus ks_synthesize(const struct KsSequence *seq,
                            enum KsPolicy policy,
                            struct KsMachine **out);

/**
 * Hill-climbs over state assignments; `allow_cycle` adds the cycle policy to
 * the zero-sink policy as a search option.
 *
 * # Safety
 * `seq` must be a live sequence handle and `out` writable.
 */
enum KsStatus ks_optimize(const struct KsSequence *seq,
                          size_t iterations,
                          size_t restarts,
                          uint64_t seed,
                          enum KsObjective objective,
                          bool allow_cycle,
                          struct KsMachine **out);

/**
 * # Safety
 * `machine` must be null or a machine handle not yet freed.
 */
void ks_machine_free(struct KsMachine *machine);

/**
 * Stage count, 0 for a null handle.
 *
 * # Safety
 * `machine` must be null or a live machine handle.
 */
uint32_t ks_machine_stages(const struct KsMachine *machine);

/**
 * # Safety
 * `machine` must be null or a live machine handle.
 */
uint32_t ks_machine_initial_state(const struct KsMachine *machine);

/**
 * One step of the machine from `state`.
 *
 * # Safety
 * `machine` must be a live machine handle and `next` writable.
 */
enum KsStatus ks_machine_transition(const struct KsMachine *machine,
                                    uint32_t state,
                                    uint32_t *next);

/**
 * Copies the ascending support of `stage` into `buf`. `len` always receives
 * the support size; `KS_STATUS_BUFFER_TOO_SMALL` is returned when
 * `capacity` is smaller, and `buf` may then be null.
 *
 * # Safety
 * `machine` must be a live handle, `len` writable and `buf` valid for
 * `capacity` writes when non-null.
 */
enum KsStatus ks_machine_support(const struct KsMachine *machine,
                                 uint32_t stage,
                                 uint32_t *buf,
                                 size_t capacity,
                                 size_t *len);

/**
 * Whether the machine regenerates `seq`, or its own target when `seq` is null.
 *
 * # Safety
 * `machine` must be a live handle, `seq` null or live, `generates` writable.
 */
enum KsStatus ks_machine_verify(const struct KsMachine *machine,
                                const struct KsSequence *seq,
                                bool *generates);

/**
 * ANF cost summed over all stages.
 *
 * # Safety
 * `machine` must be a live handle and `cost` writable.
 */
enum KsStatus ks_machine_cost(const struct KsMachine *machine, struct KsCost *cost);

/**
 * Serializes the machine as a canonical JSON machine document.
 *
 * # Safety
 * `machine` must be a live handle and `out` writable.
 */
enum KsStatus ks_machine_to_document(const struct KsMachine *machine, bool emit_anf, char **out);

/**
 * Loads a machine document; the embedded sequence becomes the target.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` writable.
 */
enum KsStatus ks_machine_from_document(const char *text, struct KsMachine **out);

/**
 * Two-input gate netlist of the machine.
 *
 * # Safety
 * `machine` must be a live handle and `out` writable.
 */
enum KsStatus ks_machine_netlist(const struct KsMachine *machine, char **out);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void ks_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KSTAGE_H */
