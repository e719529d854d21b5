#ifndef FRACHEAT_FRACHEAT_H
#define FRACHEAT_FRACHEAT_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define FH_API __attribute__((visibility("default")))
#else
#define FH_API
#endif

typedef enum fh_status {
  FH_OK = 0,
  FH_ERR_DOMAIN = 1,
  FH_ERR_NONCONVERGENCE = 2,
  FH_ERR_BRACKET = 3,
  FH_ERR_UNSUPPORTED = 4,
  FH_ERR_USAGE = 5,
  FH_ERR_IO = 6,
  FH_ERR_NULL_ARGUMENT = 7,
  FH_ERR_INTERNAL = 8
} fh_status;

/* Settings handle: flat key = value pairs, keys as in the CLI flags. */
typedef struct fh_config fh_config;

FH_API const char* fh_version(void);
FH_API const char* fh_status_name(fh_status status);
/* Message of the last failing call on this thread; "" if none. */
FH_API const char* fh_last_error(void);

FH_API fh_status fh_config_create(fh_config** out);
FH_API void fh_config_free(fh_config* cfg);
FH_API fh_status fh_config_set(fh_config* cfg, const char* key, const char* value);
/* Later set() calls override values read here. */
FH_API fh_status fh_config_load_file(fh_config* cfg, const char* path);
FH_API int fh_config_key_count(void);
/* NULL when index is out of range. */
FH_API const char* fh_config_key(int index);

/* Runs eval, estimate, verify, sample, residual or selftest.
 * exit_code: 0 ok, 1 verification failure, 2 usage, 3 nonconvergence.
 * output (CSV, empty when written to the `out` file) and message
 * (diagnostics) are released with fh_string_free; either may be NULL. */
FH_API fh_status fh_run(const char* command, const fh_config* cfg, char** output, char** message, int* exit_code);
FH_API void fh_string_free(char* s);

/* p(t, z) by quadrature for the model in cfg. */
FH_API fh_status fh_p_quadrature(const fh_config* cfg, double t, double z, double* value, double* error);
/* Regime (1 near-diagonal, 0 off-diagonal), estimate value and, for
 * off-diagonal diffusion, the exponent argument n (NaN otherwise). */
FH_API fh_status fh_estimate(const fh_config* cfg, double t, double z, int* near_diagonal, double* value, double* n);

FH_API fh_status fh_mittag_leffler(double beta, double x, double* out);
FH_API fh_status fh_stable_density(double beta, double x, double* out);
FH_API fh_status fh_stable_cdf(double beta, double x, double* out);

#ifdef __cplusplus
}
#endif

#endif
