/* supersol: pointwise estimates and Liouville / dead-core classification
 * for positive supersolutions of  -Laplace(u) = rho(x) f(u) |grad u|^p,
 * 0 <= p < 1, on domains of R^N.
 *
 * C API over the C++ core: opaque handles, integer status codes, strings
 * owned by the handle that produced them. All functions are thread-safe
 * for distinct handles; a single handle is immutable after creation.
 */
#ifndef SUPERSOL_H
#define SUPERSOL_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum supersol_status {
  SUPERSOL_OK = 0,
  SUPERSOL_INCONCLUSIVE = 1,    /* computation ran; result carries warnings */
  SUPERSOL_ERR_CONFIG = 2,      /* malformed or invalid configuration */
  SUPERSOL_ERR_NUMERIC = 3,     /* solver / quadrature failure */
  SUPERSOL_ERR_ARGUMENT = 4,    /* bad call arguments (null handle, ...) */
  SUPERSOL_ERR_UNSUPPORTED = 5  /* operation not defined for this problem */
} supersol_status;

const char* supersol_version(void);

/* ---- problem handle -------------------------------------------------- */

/* A problem parsed from flat key=value text (same schema as the CLI
 * config files: problem.N, problem.p, f.family, f.q, weight.*, domain.*).
 * On failure returns SUPERSOL_ERR_CONFIG and writes a message to errbuf. */
typedef struct supersol_problem supersol_problem;

supersol_status supersol_problem_create(const char* config_text,
                                        supersol_problem** out,
                                        char* errbuf, size_t errbuf_len);
void supersol_problem_destroy(supersol_problem* problem);

/* alpha_{N,p} = (1-p)/(2-p) (N + p/(1-p))^(-1/(1-p)); NaN on bad input. */
double supersol_alpha(int N, double p);

/* F(t), F^{-1}(y), ||F||_inf and G(t), G^{-1}(y) for the problem's f and p.
 * Infinite results are returned as +inf. Statuses: UNSUPPORTED when the
 * transform does not exist for this nonlinearity. */
supersol_status supersol_big_f(const supersol_problem*, double t, double* out);
supersol_status supersol_big_f_inverse(const supersol_problem*, double y, double* out);
supersol_status supersol_f_norm_infinity(const supersol_problem*, double* out);
supersol_status supersol_big_g(const supersol_problem*, double t, double* out);
supersol_status supersol_big_g_inverse(const supersol_problem*, double y, double* out);

/* Pointwise lower bound at x (length N) and radius 0 < r < d_Omega(x).
 * saturated is set to 1 in the dead-core / non-existence regime. */
supersol_status supersol_lower_bound(const supersol_problem*, const double* x,
                                     double r, double* value, int* saturated);

/* Upper bound for inf over B_r(x) in the non-integrable case. */
supersol_status supersol_inf_ball_upper_bound(const supersol_problem*,
                                              const double* x, double r,
                                              double* value);

/* Critical boundary distance (||F||_inf / alpha)^((1-p)/(2-p)). */
supersol_status supersol_deadcore_threshold(const supersol_problem*, double* out);

/* Classification as a JSON document (verdict, rule, certificate).
 * The returned string must be freed with supersol_string_free. */
supersol_status supersol_classify_json(const supersol_problem*, char** out_json);

void supersol_string_free(char* s);

/* ---- full command runs (what the CLI calls) --------------------------- */

typedef struct supersol_report supersol_report;

/* command: "classify" | "bound" | "deadcore" | "verify" | "cone-example".
 * Returns OK or INCONCLUSIVE with a report handle; ERR_CONFIG/ERR_NUMERIC
 * leave *out null and write a message to errbuf. */
supersol_status supersol_run(const char* command, const char* config_text,
                             supersol_report** out, char* errbuf,
                             size_t errbuf_len);

/* Owned by the report; valid until supersol_report_destroy. */
const char* supersol_report_json(const supersol_report*);
const char* supersol_report_csv(const supersol_report*);  /* NULL if none */
const char* supersol_report_svg(const supersol_report*);  /* NULL if none */
/* Process exit code the CLI should use (0/1). */
int supersol_report_exit_code(const supersol_report*);
void supersol_report_destroy(supersol_report* report);

#ifdef __cplusplus
}
#endif

#endif /* SUPERSOL_H */
