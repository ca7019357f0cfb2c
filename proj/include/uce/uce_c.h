/* C interface to the uce library. All strings are UTF-8; strings returned
 * through char** out-parameters are owned by the caller and released with
 * uce_string_free. On failure the functions return a nonzero status and
 * uce_last_error() describes the problem (per thread). */
#ifndef UCE_C_H
#define UCE_C_H

#if defined(_WIN32)
#define UCE_API __declspec(dllexport)
#else
#define UCE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum uce_status {
  UCE_OK = 0,
  UCE_ERR_SYNTAX = 1,
  UCE_ERR_VALIDATION = 2,
  UCE_ERR_DOMAIN_NOT_SUPPORTED = 3,
  UCE_ERR_RELATIONS_NOT_CONTAINED = 4,
  UCE_ERR_CHAIN_INCONSISTENCY = 5,
  UCE_ERR_NOT_PERFECT = 6,
  UCE_ERR_RANK_TOO_SMALL = 7,
  UCE_ERR_COCYCLE_INVALID = 8,
  UCE_ERR_VARIANT_NOT_SUPPORTED = 9,
  UCE_ERR_INVALID_ARGUMENT = 10,
  UCE_ERR_UNSUPPORTED = 11,
  UCE_ERR_IO = 12,
  UCE_ERR_NULL_ARGUMENT = 90,
  UCE_ERR_INTERNAL = 99
} uce_status;

typedef struct uce_algebra uce_algebra;

UCE_API const char* uce_version(void);
UCE_API const char* uce_status_name(uce_status status);
UCE_API const char* uce_last_error(void);
UCE_API void uce_string_free(char* s);

/* Algebra handles. */
UCE_API uce_status uce_algebra_parse(const char* text, uce_algebra** out);
UCE_API uce_status uce_algebra_load(const char* path, uce_algebra** out);
/* Built-in corpus: Z, Q, GF2, GF3, Z4, Q[eps], Z[eps], GF2[theta], Q[theta],
 * Z[theta], Z[C2]. */
UCE_API uce_status uce_algebra_builtin(const char* key, uce_algebra** out);
UCE_API void uce_algebra_free(uce_algebra* a);
/* {"domain", "rank", "unit", "basis": [{"name", "parity"}]} */
UCE_API uce_status uce_algebra_describe(const uce_algebra* a, char** json_out);
UCE_API uce_status uce_algebra_serialize(const uce_algebra* a, char** text_out);

/* Runs checks and returns the JSON report. `shapes` is a list such as
 * "2,1;3,1" (NULL or "" = the small-rank shapes); `checks` is a comma list
 * of check ids (NULL or "" = every applicable check). threads = 0 uses
 * UCE_THREADS or the hardware concurrency. *all_pass may be NULL. */
UCE_API uce_status uce_run_checks(const uce_algebra* a, const char* label, const char* shapes,
                          const char* checks, unsigned threads, int timing, char** json_out,
                          int* all_pass);

/* H2 of sl, st or st-sharp at (m,n) as a one-result report. */
UCE_API uce_status uce_h2(const uce_algebra* a, const char* label, int m, int n, const char* target,
                  unsigned threads, char** json_out, int* pass);

/* Cocycle axioms for the (3,1) or (2,2) cocycle: variant is "3,1" or "2,2". */
UCE_API uce_status uce_cocycle_check(const uce_algebra* a, const char* variant, char** json_out, int* pass);

#ifdef __cplusplus
}
#endif

#endif
