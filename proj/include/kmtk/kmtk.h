/* C interface to the kmtk toolkit. Every function returns a status code;
 * on failure kmtk_last_error() describes the error for the calling thread.
 * Strings returned through out-parameters are owned by the handle they came
 * from and stay valid until that handle is destroyed. */
#ifndef KMTK_H
#define KMTK_H

#include <stddef.h>
#include <stdint.h>

#if defined(KMTK_BUILDING_LIBRARY)
#define KMTK_API __attribute__((visibility("default")))
#else
#define KMTK_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum kmtk_status
{
	KMTK_OK = 0,
	KMTK_ERR_INVALID_ARGUMENT = 1, /* null pointer or malformed input */
	KMTK_ERR_PRECONDITION = 2,
	KMTK_ERR_RESOURCE = 3,
	KMTK_ERR_PRECISION = 4,
	KMTK_ERR_MODEL = 5,
	KMTK_ERR_INTERNAL = 6
} kmtk_status;

typedef struct kmtk_gcm kmtk_gcm;
typedef struct kmtk_report kmtk_report;

/* Infinite Coxeter exponents are reported as 0. */
#define KMTK_ORDER_INFINITE 0

KMTK_API char const *kmtk_version(void);
KMTK_API char const *kmtk_status_string(kmtk_status status);
/* Message of the last failed call on this thread, "" if none. */
KMTK_API char const *kmtk_last_error(void);

/* Row-major n x n entries. */
KMTK_API kmtk_status kmtk_gcm_create(int n, int const *entries, kmtk_gcm **out);
/* JSON array of integer rows. */
KMTK_API kmtk_status kmtk_gcm_from_json(char const *json, kmtk_gcm **out);
/* The admissible rank-r GCM with every non-adjacent entry -c. */
KMTK_API kmtk_status kmtk_gcm_right_angled(int r, int c, kmtk_gcm **out);
KMTK_API void kmtk_gcm_destroy(kmtk_gcm *gcm);
KMTK_API kmtk_status kmtk_gcm_rank(kmtk_gcm const *gcm, int *out);
/* Fills rank*rank exponents, KMTK_ORDER_INFINITE for infinity. */
KMTK_API kmtk_status kmtk_gcm_coxeter_matrix(kmtk_gcm const *gcm, int *out, size_t capacity);
KMTK_API kmtk_status kmtk_gcm_fuchsian_admissible(kmtk_gcm const *gcm, int r, int *admissible);

KMTK_API kmtk_status kmtk_coxeter_exponent(int a, int b, int *out);

/* Coefficients a_0..a_N of the growth series of the right-angled r-gon
 * group, by enumeration. `out` must hold N+1 values. */
KMTK_API kmtk_status kmtk_growth_coefficients(int r, int N, uint64_t *out);

/* *lattice is 1 iff W(1/q) converges; then `value` receives the exact
 * rational as "num/den" (or an integer) when capacity allows. */
KMTK_API kmtk_status kmtk_lattice_criterion(int r, int q, int *lattice, char *value,
                                            size_t capacity);

/* Runs a batch command ("growth", "gcm", "building", "treewall",
 * "chabauty", "all"). `config_json` may be NULL; it holds the keys of the
 * command-line flags. */
KMTK_API kmtk_status kmtk_run(char const *command, char const *config_json, kmtk_report **out);
KMTK_API kmtk_status kmtk_report_json(kmtk_report const *report, char const **out);
KMTK_API kmtk_status kmtk_report_csv(kmtk_report const *report, char const **out);
/* Empty string when the command rendered no tiling. */
KMTK_API kmtk_status kmtk_report_svg(kmtk_report const *report, char const **out);
KMTK_API kmtk_status kmtk_report_passed(kmtk_report const *report, int *out);
KMTK_API void kmtk_report_destroy(kmtk_report *report);

#ifdef __cplusplus
}
#endif

#endif
