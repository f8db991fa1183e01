#ifndef LEXFST_H
#define LEXFST_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes.
typedef enum LexfstStatus {
  LEXFST_STATUS_OK = 0,
  LEXFST_STATUS_NULL_POINTER = 1,
  LEXFST_STATUS_INVALID_UTF8 = 2,
  LEXFST_STATUS_PARSE = 3,
  LEXFST_STATUS_IO = 4,
  // Bad magic, unknown version, truncated or corrupt binary data.
  LEXFST_STATUS_FORMAT = 5,
  LEXFST_STATUS_NON_SUBSEQUENTIAL = 6,
  LEXFST_STATUS_AMBIGUITY_EXCEEDED = 7,
  LEXFST_STATUS_EMPTY_INPUT = 8,
  LEXFST_STATUS_NOT_FOUND = 9,
  // The machine violates a structural requirement of the operation.
  LEXFST_STATUS_INVALID = 10,
  LEXFST_STATUS_PANIC = 11,
} LexfstStatus;

// Opaque list of strings returned by lookup.
typedef struct LexfstStrings LexfstStrings;

// Opaque transducer handle.
typedef struct LexfstTransducer LexfstTransducer;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, empty after a success.
// Valid until the next call into the library on the same thread.
const char *lexfst_last_error_message(void);

// Compiles tab-separated `input<TAB>output` lines. Outputs are split into
// characters, or on whitespace when `space_tokens` is non-zero. `p` bounds
// the outputs per input; 0 uses the observed ambiguity.
//
// # Safety
// `tsv` must be a NUL-terminated string and `out` a valid pointer.
enum LexfstStatus lexfst_compile_tsv(const char *tsv,
                                     int32_t space_tokens,
                                     uintptr_t p,
                                     struct LexfstTransducer **out);

// Reads a text or binary file, telling the formats apart by content.
//
// # Safety
// `path` must be a NUL-terminated string and `out` a valid pointer.
enum LexfstStatus lexfst_read_file(const char *path, struct LexfstTransducer **out);

// Writes binary when `path` ends in `.fstb`, text otherwise.
//
// # Safety
// `t` must be a live handle and `path` a NUL-terminated string.
enum LexfstStatus lexfst_write_file(const struct LexfstTransducer *t, const char *path);

// Parses the text format.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum LexfstStatus lexfst_from_text(const char *text, struct LexfstTransducer **out);

// Renders the text format. Free the result with [`lexfst_string_free`].
//
// # Safety
// `t` must be a live handle and `out` a valid pointer.
enum LexfstStatus lexfst_to_text(const struct LexfstTransducer *t, char **out);

// Parses the binary format.
//
// # Safety
// `data` must point to `len` readable bytes and `out` must be valid.
enum LexfstStatus lexfst_from_bytes(const uint8_t *data,
                                    uintptr_t len,
                                    struct LexfstTransducer **out);

// Serializes to the binary format. Free the buffer with
// [`lexfst_bytes_free`], passing the same length.
//
// # Safety
// `t` must be a live handle; `out` and `len` valid pointers.
enum LexfstStatus lexfst_to_bytes(const struct LexfstTransducer *t, uint8_t **out, uintptr_t *len);

// Minimizes into a new handle; `t` is left unchanged.
//
// # Safety
// `t` must be a live handle and `out` a valid pointer.
enum LexfstStatus lexfst_minimize(const struct LexfstTransducer *t, struct LexfstTransducer **out);

// Trims and pushes outputs into a new handle.
//
// # Safety
// `t` must be a live handle and `out` a valid pointer.
enum LexfstStatus lexfst_push(const struct LexfstTransducer *t, struct LexfstTransducer **out);

// Looks up `word`, split into characters. Outputs are rendered with their
// symbols joined by `separator` (NULL for none). A rejected word gives an
// empty list.
//
// # Safety
// `t` must be a live handle, `word` a NUL-terminated string, `separator`
// NULL or NUL-terminated, and `out` a valid pointer.
enum LexfstStatus lexfst_lookup(const struct LexfstTransducer *t,
                                const char *word,
                                const char *separator,
                                struct LexfstStrings **out);

// Output emitted along the path of `prefix`. Fails with
// `LEXFST_STATUS_NOT_FOUND` when no word starts with `prefix`.
//
// # Safety
// As for [`lexfst_lookup`], with `out` receiving a string to release with
// [`lexfst_string_free`].
enum LexfstStatus lexfst_complete(const struct LexfstTransducer *t,
                                  const char *prefix,
                                  const char *separator,
                                  char **out);

// Number of states, 0 for NULL.
//
// # Safety
// `t` must be NULL or a live handle.
uintptr_t lexfst_num_states(const struct LexfstTransducer *t);

// Number of transitions, 0 for NULL.
//
// # Safety
// `t` must be NULL or a live handle.
uintptr_t lexfst_num_transitions(const struct LexfstTransducer *t);

// # Safety
// `s` must be NULL or a live list.
uintptr_t lexfst_strings_len(const struct LexfstStrings *s);

// The `i`-th string, or NULL when out of range. Owned by the list.
//
// # Safety
// `s` must be NULL or a live list.
const char *lexfst_strings_get(const struct LexfstStrings *s, uintptr_t i);

// # Safety
// `s` must be NULL or a list from [`lexfst_lookup`], not yet freed.
void lexfst_strings_free(struct LexfstStrings *s);

// # Safety
// `s` must be NULL or a string returned by this library, not yet freed.
void lexfst_string_free(char *s);

// # Safety
// `data` and `len` must come from [`lexfst_to_bytes`], not yet freed.
void lexfst_bytes_free(uint8_t *data, uintptr_t len);

// # Safety
// `t` must be NULL or a handle from this library, not yet freed.
void lexfst_transducer_free(struct LexfstTransducer *t);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LEXFST_H */
