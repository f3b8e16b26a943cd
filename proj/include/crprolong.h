/*
 * crprolong — exact verification toolkit for almost complex structures on
 * C^n, their J-holomorphic frames, the tangential Cauchy-Riemann calculus
 * and its order-3 complete-system derivation.
 *
 * The library is exposed through opaque handles and status codes.  Report
 * functions allocate NUL-terminated UTF-8 strings (text or JSON depending on
 * crp_options.json_output); release them with crp_string_free.  All handles
 * are immutable after creation and safe to share across threads.
 */
#ifndef CRPROLONG_H
#define CRPROLONG_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum crp_status {
    CRP_OK = 0,           /* all requested checks passed */
    CRP_VERIFY_FAIL = 1,  /* a verification failed; the report lists witnesses */
    CRP_INPUT_ERROR = 2,  /* malformed input (file, expression, argument) */
    CRP_INTERNAL_ERROR = 3
} crp_status;

typedef struct crp_structure crp_structure;
typedef struct crp_map crp_map;

typedef struct crp_options {
    int trials;                  /* sample count for numeric zero tests, >= 1 */
    double tolerance;            /* numeric zero tolerance, > 0 */
    unsigned long long seed;     /* RNG seed (reports are byte-stable per seed) */
    int truncation_order;        /* surface-reduction truncation order */
    int json_output;             /* 0: human-readable text, 1: JSON */
} crp_options;

/* Fills the defaults: trials=20, tolerance=1e-9, seed=0, truncation_order=4,
 * json_output=0. */
void crp_options_init(crp_options* opts);

const char* crp_version(void);

/* Message for the most recent failure on this thread. */
const char* crp_last_error(void);

void crp_string_free(char* s);

/* --- structures -------------------------------------------------------- */

crp_status crp_structure_load_file(const char* path, crp_structure** out);
crp_status crp_structure_load_json(const char* json_text, crp_structure** out);
void crp_structure_free(crp_structure* s);
int crp_structure_dim(const crp_structure* s);
/* "standard" | "model" | "star" | "raw" (borrowed, do not free) */
const char* crp_structure_kind(const crp_structure* s);

/* --- maps ---------------------------------------------------------------*/

crp_status crp_map_load_file(const char* path, crp_map** out);
crp_status crp_map_load_json(const char* json_text, crp_map** out);
void crp_map_free(crp_map* m);

/* --- verification reports ------------------------------------------------
 * Each call writes a report string to *out_report (when non-NULL).
 */

/* Involution, reality pairing and (for the star kind) the shape constraints
 * with their equivalence to the involution residual. */
crp_status crp_check_structure(const crp_structure* s, const crp_options* opts, char** out_report);

/* Builds the J-holomorphic frame and verifies the eigenvalue (and, for model
 * structures, tangency) identities. */
crp_status crp_frame_report(const crp_structure* s, const crp_options* opts, char** out_report);

/* Structure constants of the frame brackets (model/standard kinds). */
crp_status crp_brackets_report(const crp_structure* s, const crp_options* opts, char** out_report);

/* Levi form of the Siegel boundary for the field L_{field_index} at the
 * point (point_re_im holds 2n doubles: re z_1, im z_1, ...); checks the
 * value against a finite-difference oracle. */
crp_status crp_levi(const crp_structure* s, int field_index, const double* point_re_im,
                    const crp_options* opts, double* out_value, char** out_report);

/* Coefficients of conj(X_l) in [X_j, X_k] over the ambient (1,0) frame:
 * the integrability defect and its direction-constancy verdict. */
crp_status crp_defect_report(const crp_structure* s, int j, int k, const crp_options* opts,
                             char** out_report);

/* The displayed-identity suite plus the membership chain; binding may be
 * NULL (generic symbolic constants) or a standard/model structure. */
crp_status crp_identities_report(int n, const crp_structure* binding, const crp_options* opts,
                                 char** out_report);

/* The order-3 complete-system report. */
crp_status crp_prolong_report(int n, const crp_structure* binding, const crp_options* opts,
                              char** out_report);

/* Pseudo-holomorphy residual, tangential residuals on the Siegel boundary
 * and the frame pushforward matrix at 0. */
crp_status crp_verify_map(const crp_map* f, const crp_structure* source,
                          const crp_structure* target, const crp_options* opts, char** out_report);

/* --- expression utilities ------------------------------------------------*/

/* Evaluates an expression of the mini-language at a point (2n doubles). */
crp_status crp_expr_eval(const char* expr, int n, const double* point_re_im, double* out_re,
                         double* out_im);

/* Parses and reprints an expression (canonical spelling); NULL on error. */
crp_status crp_expr_roundtrip(const char* expr, int n, char** out_printed);

#ifdef __cplusplus
}
#endif

#endif /* CRPROLONG_H */
