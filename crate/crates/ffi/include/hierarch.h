#ifndef HIERARCH_H
#define HIERARCH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>

/**
 * Result codes shared by every entry point.
 */
typedef enum HierarchStatus {
  HIERARCH_STATUS_OK = 0,
  HIERARCH_STATUS_NULL_ARGUMENT = 1,
  HIERARCH_STATUS_INVALID_UTF8 = 2,
  HIERARCH_STATUS_PARSE = 3,
  HIERARCH_STATUS_UNSUPPORTED = 4,
  HIERARCH_STATUS_SIZE_GUARD = 5,
  HIERARCH_STATUS_INVALID_INPUT = 6,
  HIERARCH_STATUS_PANIC = 7,
} HierarchStatus;

/**
 * Named languages available to temporal formulas.
 */
typedef struct HierarchEnv HierarchEnv;

/**
 * A regular language, stored as a complete DFA.
 */
typedef struct HierarchLanguage HierarchLanguage;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread, or null. The pointer
 * stays valid until the next call into the library on this thread.
 */
const char *hierarch_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *hierarch_version(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void hierarch_string_free(char *s);

/**
 * Compiles a regular expression over the letters of `alphabet`
 * (for example `"ab"`). `A` stands for any letter and `eps` for the empty
 * word.
 *
 * # Safety
 * Pointers must be null or valid; `out` receives a new handle.
 */
enum HierarchStatus hierarch_language_from_regex(const char *regex,
                                                 const char *alphabet,
                                                 struct HierarchLanguage **out);

/**
 * Reads a DFA in the JSON automaton format. With `complete`, missing
 * transitions go to a fresh sink state.
 *
 * # Safety
 * Pointers must be null or valid; `out` receives a new handle.
 */
enum HierarchStatus hierarch_language_from_json(const char *json,
                                                bool complete,
                                                struct HierarchLanguage **out);

/**
 * One of the built-in example languages `F1`..`F6`; a `co` prefix gives the
 * complement.
 *
 * # Safety
 * Pointers must be null or valid; `out` receives a new handle.
 */
enum HierarchStatus hierarch_language_fixture(const char *name, struct HierarchLanguage **out);

/**
 * Releases a language. Null is ignored.
 *
 * # Safety
 * `lang` must come from this library and not have been freed.
 */
void hierarch_language_free(struct HierarchLanguage *lang);

/**
 * Number of states of the stored automaton.
 *
 * # Safety
 * Pointers must be null or valid.
 */
enum HierarchStatus hierarch_language_num_states(const struct HierarchLanguage *lang, size_t *out);

/**
 * Whether `word` belongs to the language.
 *
 * # Safety
 * Pointers must be null or valid.
 */
enum HierarchStatus hierarch_language_accepts(const struct HierarchLanguage *lang,
                                              const char *word,
                                              bool *out);

/**
 * The automaton as JSON. Release with [`hierarch_string_free`].
 *
 * # Safety
 * Pointers must be null or valid.
 */
enum HierarchStatus hierarch_language_to_json(const struct HierarchLanguage *lang, char **out);

/**
 * Size of the syntactic monoid.
 *
 * # Safety
 * Pointers must be null or valid.
 */
enum HierarchStatus hierarch_syntactic_size(const struct HierarchLanguage *lang, size_t *out);

/**
 * Membership in a class such as `"upol:at"` or `"fo2:st"`.
 *
 * # Safety
 * Pointers must be null or valid.
 */
enum HierarchStatus hierarch_member(const struct HierarchLanguage *lang,
                                    const char *class_,
                                    bool *out);

/**
 * Membership verdict with its certificate, as JSON. Release with
 * [`hierarch_string_free`].
 *
 * # Safety
 * Pointers must be null or valid.
 */
enum HierarchStatus hierarch_member_json(const struct HierarchLanguage *lang,
                                         const char *class_,
                                         char **out);

/**
 * Whether some language of UPol(C) contains `l1` and avoids `l2`, where
 * `oracle` names C (`"st"`, `"at"`, `"mod"`, ...).
 *
 * # Safety
 * Pointers must be null or valid.
 */
enum HierarchStatus hierarch_separate(const struct HierarchLanguage *l1,
                                      const struct HierarchLanguage *l2,
                                      const char *oracle,
                                      bool *out);

/**
 * Whether `l0` has a UPol(C)-cover in which no block meets all of the
 * `count` languages in `others`.
 *
 * # Safety
 * `others` must point to `count` valid handles; other pointers must be
 * null or valid.
 */
enum HierarchStatus hierarch_cover(const struct HierarchLanguage *l0,
                                   const struct HierarchLanguage *const *others,
                                   size_t count,
                                   const char *oracle,
                                   bool *out);

/**
 * An empty environment over the letters of `alphabet`.
 *
 * # Safety
 * Pointers must be null or valid; `out` receives a new handle.
 */
enum HierarchStatus hierarch_env_new(const char *alphabet, struct HierarchEnv **out);

/**
 * Binds `name` to the language of `regex`.
 *
 * # Safety
 * Pointers must be null or valid.
 */
enum HierarchStatus hierarch_env_insert_regex(struct HierarchEnv *env,
                                              const char *name,
                                              const char *regex);

/**
 * Releases an environment. Null is ignored.
 *
 * # Safety
 * `env` must come from this library and not have been freed.
 */
void hierarch_env_free(struct HierarchEnv *env);

/**
 * Evaluates a temporal formula at `position` of `word`, where position 0
 * is the left marker and `len + 1` the right one.
 *
 * # Safety
 * Pointers must be null or valid.
 */
enum HierarchStatus hierarch_tl_eval(const struct HierarchEnv *env,
                                     const char *formula,
                                     const char *word,
                                     size_t position,
                                     bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HIERARCH_H */
