#ifndef FREELIP_FREELIP_H
#define FREELIP_FREELIP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define FREELIP_API __declspec(dllexport)
#else
#define FREELIP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes returned by every fallible call. */
typedef enum freelip_status {
  FREELIP_OK = 0,
  FREELIP_INVALID_ARGUMENT = 1,
  FREELIP_PARSE_ERROR = 2,
  FREELIP_UNKNOWN_POINT = 3,
  FREELIP_ASYMMETRIC_MATRIX = 4,
  FREELIP_NONZERO_DIAGONAL = 5,
  FREELIP_ZERO_OFF_DIAGONAL = 6,
  FREELIP_TRIANGLE_VIOLATION = 7,
  FREELIP_INVALID_EXPONENT = 8,
  FREELIP_DUPLICATE_LABEL = 9,
  FREELIP_INVALID_PARTITION = 10,
  FREELIP_INVALID_PARAMETER = 11,
  FREELIP_NOT_LIPSCHITZ = 12,
  FREELIP_BASE_MISSING = 13,
  FREELIP_OVERLAPPING_SUPPORTS = 14,
  FREELIP_NORM_EXCEEDS_ONE = 15,
  FREELIP_EMPTY_REGION = 16,
  FREELIP_SPACE_MISMATCH = 17,
  FREELIP_SAME_POINT = 18,
  FREELIP_FLOAT_BACKEND_UNSUPPORTED = 19,
  FREELIP_LP_INFEASIBLE = 20,
  FREELIP_EMPTY_SET = 21,
  FREELIP_TOO_FEW = 22,
  FREELIP_NOT_EXPOSED = 23,
  FREELIP_CONSTRUCTION_ASSERT_FAILED = 24,
  FREELIP_NOT_ATTAINING = 25,
  FREELIP_CURVE_TOO_LONG = 26,
  FREELIP_OVERLAPPING_INTERVALS = 27,
  FREELIP_RADIUS_TOO_SMALL = 28,
  FREELIP_NORM_NOT_ONE = 29,
  FREELIP_NOT_A_CUBE = 30,
  FREELIP_BALL_TOO_LARGE = 31,
  FREELIP_INNER_BALL_EMPTY = 32,
  FREELIP_DEGENERATE_CENTERS = 33,
  FREELIP_BASE_IN_BALL = 34,
  FREELIP_IO_ERROR = 35,
  FREELIP_INTERNAL = 99
} freelip_status;

typedef struct freelip_space freelip_space;
typedef struct freelip_function freelip_function;
typedef struct freelip_vector freelip_vector;

FREELIP_API const char* freelip_version(void);
/* Symbolic name of a status code, e.g. "TriangleViolation". */
FREELIP_API const char* freelip_status_name(int status);
/* Message of the last failed call on the calling thread; "" after success. */
FREELIP_API const char* freelip_last_error(void);
/* Releases strings returned through char** out parameters. */
FREELIP_API void freelip_free_string(char* text);
/* Worker count from FREELIP_THREADS or the hardware. */
FREELIP_API size_t freelip_default_threads(void);

/* Metric spaces. base may be NULL to keep the file's base; CSV files need one.
   tol applies to float-backend spaces; pass 0 for the default 1e-9. */
FREELIP_API int freelip_space_load(const char* path, const char* base, double tol, freelip_space** out);
FREELIP_API int freelip_space_parse(const char* json_text, const char* base, double tol, freelip_space** out);
/* params_json is an object of string or number values, e.g. {"N": 10}; may be NULL. */
FREELIP_API int freelip_space_generate(const char* family, const char* params_json, uint64_t seed,
                                       freelip_space** out);
FREELIP_API void freelip_space_free(freelip_space* space);
FREELIP_API size_t freelip_space_size(const freelip_space* space);
FREELIP_API int freelip_space_is_exact(const freelip_space* space);
FREELIP_API int freelip_space_to_json(const freelip_space* space, char** out);
FREELIP_API int freelip_space_to_csv(const freelip_space* space, char** out);

/* Lipschitz functions and free-space vectors; relative space paths resolve
   against the file's directory. */
FREELIP_API int freelip_function_load(const char* path, freelip_function** out);
FREELIP_API int freelip_function_parse(const char* json_text, const char* dir, freelip_function** out);
FREELIP_API void freelip_function_free(freelip_function* f);
FREELIP_API int freelip_vector_load(const char* path, freelip_vector** out);
FREELIP_API int freelip_vector_parse(const char* json_text, const char* dir, freelip_vector** out);
FREELIP_API void freelip_vector_free(freelip_vector* mu);

/* {"norm", "pairs"}: the Lipschitz constant and every pair attaining it. */
FREELIP_API int freelip_function_norm(const freelip_function* f, char** out);
/* {"norm", "witness", "pivots"[, "plan", "flow_norm"]}. */
FREELIP_API int freelip_vector_norm(const freelip_vector* mu, int with_plan, char** out);

/* JSON array with one row per unordered pair. */
FREELIP_API int freelip_classify(const freelip_space* space, size_t threads, char** out);
/* Certificate JSON. gromov != 0 builds the functionals from the Gromov
   construction instead of the margin program. */
FREELIP_API int freelip_alpha(const freelip_space* space, int gromov, uint64_t seed, size_t threads, char** out);
/* Summary of the space's invariants. */
FREELIP_API int freelip_report(const freelip_space* space, size_t threads, char** out);

/* JSON array of names. */
FREELIP_API int freelip_suite_names(char** out);
FREELIP_API int freelip_family_names(char** out);
/* Runs one suite; spaces_spec NULL selects the suite default. *passed is 1
   when no instance failed. */
FREELIP_API int freelip_verify(const char* suite, const char* spaces_spec, uint64_t seed, size_t threads,
                               char** out, int* passed);

#ifdef __cplusplus
}
#endif

#endif
