#include "fracheat/fracheat.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <limits>
#include <new>
#include <string>

#include "config.hpp"
#include "error.hpp"
#include "estimates.hpp"
#include "harness.hpp"
#include "solution.hpp"
#include "special.hpp"
#include "subordinator.hpp"

struct fh_config {
  fracheat::Config cfg;
};

namespace {

thread_local std::string last_error;

fh_status status_for(fracheat::ErrorKind kind) {
  using fracheat::ErrorKind;
  switch (kind) {
    case ErrorKind::Domain:
      return FH_ERR_DOMAIN;
    case ErrorKind::NonConvergence:
      return FH_ERR_NONCONVERGENCE;
    case ErrorKind::BracketFailure:
      return FH_ERR_BRACKET;
    case ErrorKind::UnsupportedModel:
      return FH_ERR_UNSUPPORTED;
    case ErrorKind::Usage:
      return FH_ERR_USAGE;
    case ErrorKind::Io:
      return FH_ERR_IO;
  }
  return FH_ERR_INTERNAL;
}

fh_status fail(fh_status status, const std::string& message) {
  last_error = message;
  return status;
}

template <typename F>
fh_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return FH_OK;
  } catch (const fracheat::Error& e) {
    return fail(status_for(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(FH_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(FH_ERR_INTERNAL, e.what());
  }
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* fh_version(void) { return "1.0.0"; }

const char* fh_status_name(fh_status status) {
  switch (status) {
    case FH_OK:
      return "ok";
    case FH_ERR_DOMAIN:
      return "domain error";
    case FH_ERR_NONCONVERGENCE:
      return "nonconvergence";
    case FH_ERR_BRACKET:
      return "bracket failure";
    case FH_ERR_UNSUPPORTED:
      return "unsupported model";
    case FH_ERR_USAGE:
      return "usage error";
    case FH_ERR_IO:
      return "io error";
    case FH_ERR_NULL_ARGUMENT:
      return "null argument";
    case FH_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* fh_last_error(void) { return last_error.c_str(); }

fh_status fh_config_create(fh_config** out) {
  if (!out) return fail(FH_ERR_NULL_ARGUMENT, "out is null");
  *out = nullptr;
  return guarded([&] { *out = new fh_config(); });
}

void fh_config_free(fh_config* cfg) { delete cfg; }

fh_status fh_config_set(fh_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value) return fail(FH_ERR_NULL_ARGUMENT, "config, key and value must be non-null");
  return guarded([&] { cfg->cfg.set(key, value); });
}

fh_status fh_config_load_file(fh_config* cfg, const char* path) {
  if (!cfg || !path) return fail(FH_ERR_NULL_ARGUMENT, "config and path must be non-null");
  return guarded([&] { cfg->cfg.load_file(path); });
}

int fh_config_key_count(void) { return static_cast<int>(fracheat::Config::known_keys().size()); }

const char* fh_config_key(int index) {
  const auto& keys = fracheat::Config::known_keys();
  if (index < 0 || index >= static_cast<int>(keys.size())) return nullptr;
  return keys[static_cast<std::size_t>(index)].c_str();
}

fh_status fh_run(const char* command, const fh_config* cfg, char** output, char** message, int* exit_code) {
  if (!command || !cfg || !exit_code) return fail(FH_ERR_NULL_ARGUMENT, "command, config and exit_code must be non-null");
  if (output) *output = nullptr;
  if (message) *message = nullptr;
  return guarded([&] {
    const fracheat::CommandResult res = fracheat::run_command(command, cfg->cfg);
    char* out_text = output ? duplicate(res.output) : nullptr;
    char* msg_text = nullptr;
    if (message) {
      try {
        msg_text = duplicate(res.message);
      } catch (...) {
        std::free(out_text);
        throw;
      }
    }
    if (output) *output = out_text;
    if (message) *message = msg_text;
    *exit_code = res.exit_code;
  });
}

void fh_string_free(char* s) { std::free(s); }

fh_status fh_p_quadrature(const fh_config* cfg, double t, double z, double* value, double* error) {
  if (!cfg || !value) return fail(FH_ERR_NULL_ARGUMENT, "config and value must be non-null");
  return guarded([&] {
    const fracheat::ModelSetup setup = fracheat::build_model(cfg->cfg);
    const fracheat::SubordinatorModel model(setup.exponent, setup.quadrature);
    const auto p = fracheat::p_quadrature(setup.kernel, model, t, z, setup.quadrature);
    if (!p.converged) throw fracheat::NonConvergenceError("quadrature did not converge", p.value, p.error);
    *value = p.value;
    if (error) *error = p.error;
  });
}

fh_status fh_estimate(const fh_config* cfg, double t, double z, int* near_diagonal, double* value, double* n) {
  if (!cfg || !value) return fail(FH_ERR_NULL_ARGUMENT, "config and value must be non-null");
  return guarded([&] {
    const fracheat::ModelSetup setup = fracheat::build_model(cfg->cfg);
    const auto e = fracheat::estimate(setup.estimate_model, t, z, setup.quadrature);
    *value = e.value;
    if (near_diagonal) *near_diagonal = e.tag.regime == fracheat::Regime::NearDiagonal ? 1 : 0;
    if (n) *n = e.n ? *e.n : std::numeric_limits<double>::quiet_NaN();
  });
}

fh_status fh_mittag_leffler(double beta, double x, double* out) {
  if (!out) return fail(FH_ERR_NULL_ARGUMENT, "out is null");
  return guarded([&] { *out = fracheat::special::mittag_leffler(beta, x); });
}

fh_status fh_stable_density(double beta, double x, double* out) {
  if (!out) return fail(FH_ERR_NULL_ARGUMENT, "out is null");
  return guarded([&] { *out = fracheat::stable::density(beta, x); });
}

fh_status fh_stable_cdf(double beta, double x, double* out) {
  if (!out) return fail(FH_ERR_NULL_ARGUMENT, "out is null");
  return guarded([&] { *out = fracheat::stable::cdf(beta, x); });
}

}  // extern "C"
