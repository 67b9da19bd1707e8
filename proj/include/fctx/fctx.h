#ifndef FCTX_FCTX_H
#define FCTX_FCTX_H

/*
 * C interface to the fuzzy context library.
 *
 * Every function returns an fctx_status. On failure the thread-local message
 * from fctx_last_error() describes the problem; output parameters are left
 * untouched. Strings returned through char** are owned by the caller and
 * released with fctx_string_free(). Handles are released with their *_free
 * function; passing NULL to any *_free is a no-op.
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define FCTX_API __declspec(dllexport)
#else
#define FCTX_API __attribute__((visibility("default")))
#endif

typedef enum fctx_status {
  FCTX_OK = 0,
  FCTX_E_INVALID_ARGUMENT = 1,
  FCTX_E_ALL_ZERO_MEMBERSHIP = 2,
  FCTX_E_BOTH_EMPTY = 3,
  FCTX_E_ALL_REJECTED = 4,
  FCTX_E_DEGENERATE_WORD = 5,
  FCTX_E_MISSING_WORD_SURVEY = 6,
  FCTX_E_MISSING_INPUT = 7,
  FCTX_E_UNKNOWN_WORD = 8,
  FCTX_E_NO_RULE_FIRED = 9,
  FCTX_E_EMPTY_CODEBOOK = 10,
  FCTX_E_IO = 11,
  FCTX_E_FORMAT = 12,
  FCTX_E_VALIDATION = 13,
  FCTX_E_DEGENERATE_INTERVAL = 14,
  FCTX_E_NON_POSITIVE_MAX = 15,
  FCTX_E_UNKNOWN_MEMBER = 16,
  FCTX_E_NON_MONOTONE_TIMESTAMP = 17,
  FCTX_E_INTERNAL = 18
} fctx_status;

typedef struct fctx_codebook fctx_codebook;
typedef struct fctx_rulebase fctx_rulebase;
typedef struct fctx_group fctx_group;

FCTX_API const char* fctx_version(void);
FCTX_API const char* fctx_status_name(fctx_status status);
/* Message of the last failed call on this thread, "" if none. */
FCTX_API const char* fctx_last_error(void);
FCTX_API void fctx_string_free(char* s);

/* Codebooks */
FCTX_API fctx_status fctx_codebook_builtin(const char* vocabulary, fctx_codebook** out);
FCTX_API fctx_status fctx_codebook_load(const char* path, fctx_codebook** out);
FCTX_API fctx_status fctx_codebook_from_json(const char* json, fctx_codebook** out);
FCTX_API fctx_status fctx_codebook_to_json(const fctx_codebook* cb, char** out);
FCTX_API fctx_status fctx_codebook_save(const fctx_codebook* cb, const char* path);
FCTX_API fctx_status fctx_codebook_name(const fctx_codebook* cb, char** out);
FCTX_API fctx_status fctx_codebook_size(const fctx_codebook* cb, size_t* out);
FCTX_API void fctx_codebook_free(fctx_codebook* cb);

/* Encodes a survey file. report_json (may be NULL) receives one report per
 * word with accepted and rejected intervals. */
FCTX_API fctx_status fctx_encode_survey_file(const char* survey_path, fctx_codebook** out, char** report_json);

/* Rulebases. Builtin names: "ranking", "events", "mobility". */
FCTX_API fctx_status fctx_rulebase_builtin(const char* name, fctx_rulebase** out);
FCTX_API fctx_status fctx_rulebase_load(const char* path, fctx_rulebase** out);
FCTX_API fctx_status fctx_rulebase_to_json(const fctx_rulebase* rb, char** out);
FCTX_API void fctx_rulebase_free(fctx_rulebase* rb);

/* Runs the rulebase over inputs given as JSON. Builtin placeholder codebooks
 * are used for every vocabulary not supplied in books. The trace is written
 * to trace_json on success and also when the status is
 * FCTX_E_NO_RULE_FIRED. */
FCTX_API fctx_status fctx_reason(const fctx_rulebase* rb, const fctx_codebook* const* books, size_t n_books,
                                 const char* inputs_json, char** trace_json);

/* Groups. A group handle owns its state; apply keeps the previous state when
 * an event fails. */
FCTX_API fctx_status fctx_group_create(const char* name, fctx_group** out);
FCTX_API fctx_status fctx_group_load(const char* config_path, fctx_group** out);
FCTX_API fctx_status fctx_group_apply_event(fctx_group* g, const char* event_json, char** actions_json);
/* Applies a JSON-lines event file as one transaction. */
FCTX_API fctx_status fctx_group_apply_event_file(fctx_group* g, const char* events_path, char** actions_json);
FCTX_API fctx_status fctx_group_state_json(const fctx_group* g, char** out);
FCTX_API void fctx_group_free(fctx_group* g);

/* Runs a scenario config; the report is line-oriented text, or JSON when
 * as_json is nonzero. */
FCTX_API fctx_status fctx_scenario_run(const char* config_path, int as_json, char** report);

/* Trapezoid utilities. umf = {a, b, c, d} at height 1, lmf = {a, b, c, d, h}. */
FCTX_API fctx_status fctx_centroid(const double umf[4], const double lmf[5], double* c_l, double* c_r);
FCTX_API fctx_status fctx_similarity(const double umf1[4], const double lmf1[5], const double umf2[4],
                                     const double lmf2[5], double* out);

#ifdef __cplusplus
}
#endif

#endif
