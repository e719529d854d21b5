#include <math.h>
#include <stdio.h>
#include <string.h>

#include "fracheat/fracheat.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

int main(void) {
  fh_config* cfg = NULL;
  double v = 0.0, err = 0.0, n = 0.0;
  int near = -1, code = -1;
  char* out = NULL;
  char* msg = NULL;

  EXPECT(fh_config_create(&cfg) == FH_OK);
  EXPECT(fh_config_set(cfg, "beta", "0.5") == FH_OK);
  EXPECT(fh_config_set(cfg, "kernel", "gaussian:1") == FH_OK);
  EXPECT(fh_p_quadrature(cfg, 1.0, 0.0, &v, &err) == FH_OK);
  EXPECT(fabs(v - 0.4080244695491) < 1e-12);
  EXPECT(err >= 0.0);

  EXPECT(fh_estimate(cfg, 1.0, 4.0, &near, &v, &n) == FH_OK);
  EXPECT(near == 0);
  EXPECT(fabs(v - 1.0) < 1e-12);
  EXPECT(fabs(n - pow(4.0, 4.0 / 3.0)) < 1e-10);

  EXPECT(fh_config_set(cfg, "t", "1") == FH_OK);
  EXPECT(fh_config_set(cfg, "z", "0") == FH_OK);
  EXPECT(fh_run("eval", cfg, &out, &msg, &code) == FH_OK);
  EXPECT(code == 0);
  EXPECT(out != NULL && strncmp(out, "# fracheat-csv v1\n", 18) == 0);
  EXPECT(out != NULL && strstr(out, "1,0,0.408024469549,") != NULL);
  fh_string_free(out);
  fh_string_free(msg);

  EXPECT(fh_run("nonsense", cfg, &out, &msg, &code) == FH_OK);
  EXPECT(code == 2);
  EXPECT(msg != NULL && strstr(msg, "unknown command") != NULL);
  fh_string_free(out);
  fh_string_free(msg);

  EXPECT(fh_config_set(cfg, "no_such_key", "1") == FH_ERR_USAGE);
  EXPECT(strstr(fh_last_error(), "no_such_key") != NULL);
  EXPECT(fh_config_load_file(cfg, "missing.toml") == FH_ERR_USAGE);
  EXPECT(strstr(fh_last_error(), "missing.toml") != NULL);
  EXPECT(fh_config_set(NULL, "beta", "0.5") == FH_ERR_NULL_ARGUMENT);
  EXPECT(fh_p_quadrature(cfg, 1.0, 0.0, NULL, NULL) == FH_ERR_NULL_ARGUMENT);

  EXPECT(fh_config_set(cfg, "kernel", "gaussian:3") == FH_OK);
  EXPECT(fh_p_quadrature(cfg, 1.0, 0.0, &v, NULL) == FH_ERR_DOMAIN);
  EXPECT(strlen(fh_last_error()) > 0);

  EXPECT(fh_mittag_leffler(0.5, 1.0, &v) == FH_OK);
  EXPECT(fabs(v - exp(1.0) * erfc(1.0)) < 1e-12);
  EXPECT(fh_mittag_leffler(1.5, 1.0, &v) == FH_ERR_DOMAIN);
  EXPECT(fh_stable_density(0.5, 1.0, &v) == FH_OK);
  EXPECT(fabs(v - exp(-0.25) / (2.0 * sqrt(acos(-1.0)))) < 1e-12);
  EXPECT(fh_stable_cdf(0.5, 1.0, &v) == FH_OK);
  EXPECT(fabs(v - erfc(0.5)) < 1e-12);

  EXPECT(fh_config_key_count() > 10);
  EXPECT(fh_config_key(0) != NULL);
  EXPECT(fh_config_key(-1) == NULL);
  EXPECT(fh_config_key(fh_config_key_count()) == NULL);
  EXPECT(strcmp(fh_status_name(FH_ERR_IO), "io error") == 0);
  EXPECT(strlen(fh_version()) > 0);

  fh_config_free(cfg);
  fh_config_free(NULL);
  if (failures == 0) printf("capi: all checks passed\n");
  return failures == 0 ? 0 : 1;
}
