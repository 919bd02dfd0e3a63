/*
 * C API of the esig library: expected signatures and Wiener-chaos kernels of
 * centred Gaussian processes (fBm with H in (1/4,1), Brownian motion,
 * Brownian bridge, centred Ornstein-Uhlenbeck).
 *
 * All functions return an esig_status; on failure esig_last_error() holds a
 * message (thread-local, valid until the next failing call on the same
 * thread). Strings returned through char** are heap-allocated and must be
 * released with esig_free_string(). Handles are opaque and released with
 * their matching _free function. JSON payloads follow the schemas produced by
 * the `esig` command-line tool.
 */
#ifndef ESIG_H
#define ESIG_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define ESIG_API __declspec(dllexport)
#else
#define ESIG_API __attribute__((visibility("default")))
#endif

typedef enum esig_status {
  ESIG_OK = 0,
  ESIG_ERR_INVALID_ARGUMENT = 1, /* bad parameter or precondition violation */
  ESIG_ERR_DOMAIN = 2,           /* evaluation outside a function's domain  */
  ESIG_ERR_CAPABILITY = 3,       /* desk-scale ceiling or budget exceeded   */
  ESIG_ERR_QUADRATURE = 4,       /* tolerance not reached; estimate in msg  */
  ESIG_ERR_BAD_JSON = 5,         /* malformed JSON payload                  */
  ESIG_ERR_RUNTIME = 6           /* any other failure                       */
} esig_status;

typedef struct esig_model esig_model;

ESIG_API const char* esig_version(void);
ESIG_API const char* esig_last_error(void);
ESIG_API void esig_free_string(char* s);

/* Model lifecycle. spec_json example: {"kind":"fbm","hurst":0.4,"horizon":1.0} */
ESIG_API esig_status esig_model_create(const char* spec_json, esig_model** out_model);
ESIG_API void esig_model_free(esig_model* model);

/* Pointwise covariance evaluations. */
ESIG_API esig_status esig_model_cov(const esig_model* model, double s, double t, double* out);
ESIG_API esig_status esig_model_var(const esig_model* model, double t, double* out);
ESIG_API esig_status esig_model_var_deriv(const esig_model* model, double t, double* out);
ESIG_API esig_status esig_model_cov_d2(const esig_model* model, double s, double t, double* out);
ESIG_API esig_status esig_model_cov_d12(const esig_model* model, double s, double t, double* out);
ESIG_API esig_status esig_model_inc_cov(const esig_model* model, double s, double t, double u,
                                        double v, double* out);

/* Pairing diagrams with exactly m single positions, as a JSON array of
 * {"n": int, "pairs": [[i, j], ...]} with 1-based positions. */
ESIG_API esig_status esig_enumerate_pairings(int n, int m, char** out_json);

/* Value of the pairing integral of a diagram without singles over [s, t].
 * quad_json may be NULL for defaults. */
ESIG_API esig_status esig_diagram_scalar(const esig_model* model, const char* diagram_json,
                                         double s, double t, const char* quad_json,
                                         double* out_value, double* out_err);

/* Run a configured operation (subcommand compute | convergence | sample |
 * verify) and return its output document. */
ESIG_API esig_status esig_run(const char* config_json, char** out_json);

/* Names of the verification suites, as a JSON array of strings. */
ESIG_API esig_status esig_suites(char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* ESIG_H */
