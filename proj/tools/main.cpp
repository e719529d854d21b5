#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "fracheat/fracheat.h"

namespace {

struct Handle {
  fh_config* cfg = nullptr;
  ~Handle() { fh_config_free(cfg); }
};

const std::map<std::string, std::string>& key_help() {
  static const std::map<std::string, std::string> help{
      {"beta", "stable index in (0,1); shorthand for subordinator=stable:B"},
      {"subordinator", "stable:B, mixture:W,B;W,B... or cbf:ALPHA3"},
      {"kernel", "gaussian:D, cauchy:D, jump or diffusion"},
      {"scale", "space-time scale Phi: power:A or power2:A_LOW,A_HIGH,R_BREAK"},
      {"volume", "volume function V: power:D or power2:D_LOW,D_HIGH,R_BREAK"},
      {"flavor", "estimate flavor: jump or diffusion"},
      {"t", "comma-separated times"},
      {"z", "comma-separated distances"},
      {"t_min", "log grid: smallest time"},
      {"t_max", "log grid: largest time"},
      {"t_points", "log grid: number of times"},
      {"z_min", "grid: smallest distance (or rho)"},
      {"z_max", "grid: largest distance (or rho)"},
      {"z_points", "grid: number of distances"},
      {"z_axis", "verify grid axis: rho (scaled) or abs"},
      {"method", "quad, mc or fourier"},
      {"n", "Monte Carlo sample count"},
      {"seed", "Monte Carlo seed"},
      {"out", "write CSV to this file instead of stdout"},
      {"rel_tol", "quadrature relative tolerance"},
      {"what", "sample: S or E"},
      {"x_min", "residual: left end of the space grid"},
      {"x_max", "residual: right end of the space grid"},
      {"x_points", "residual: odd number of Simpson points"},
      {"f_center", "residual: initial bump center"},
      {"f_variance", "residual: initial bump variance"},
      {"g_center", "residual: test function center"},
      {"g_variance", "residual: test function variance"},
      {"residual_tol", "residual: pass threshold"},
      {"spread_max", "verify: near-diagonal spread limit"},
      {"off_spread_max", "verify: off-diagonal spread limit"},
      {"log_ratio_min", "verify: lower limit for the diffusion log ratio"},
      {"log_ratio_max", "verify: upper limit for the diffusion log ratio"},
      {"path_fraction", "mixture path sampler step, in units of 1/phi(1/t)"},
      {"t0", "residual: start time of the weak form"},
  };
  return help;
}

std::string flag_name(const char* key) {
  std::string s = key;
  for (char& c : s) {
    if (c == '_') c = '-';
  }
  return "--" + s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional-time heat kernels: evaluation, estimates and verification campaigns", "fracheat"};
  app.require_subcommand(1);

  const std::vector<std::pair<std::string, std::string>> commands{
      {"eval", "evaluate p(t, z) on a list of times and distances"},
      {"estimate", "evaluate the two-sided estimate and its regime"},
      {"verify", "run a sandwich campaign over a (t, z) grid"},
      {"sample", "draw S_t or E_t"},
      {"residual", "weak-form residual of the Caputo heat equation"},
      {"selftest", "fast invariant checks"},
  };

  std::string config_path;
  std::map<std::string, std::string> values;
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "key = value settings file; flags override it");
    for (int i = 0; i < fh_config_key_count(); ++i) {
      const char* key = fh_config_key(i);
      const auto it = key_help().find(key);
      sub->add_option(flag_name(key), values[key], it == key_help().end() ? "" : it->second);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  Handle h;
  if (fh_config_create(&h.cfg) != FH_OK) {
    std::cerr << "error: " << fh_last_error() << "\n";
    return 2;
  }
  if (!config_path.empty() && fh_config_load_file(h.cfg, config_path.c_str()) != FH_OK) {
    std::cerr << "error: " << fh_last_error() << "\n";
    return 2;
  }
  CLI::App* sub = app.get_subcommand(command);
  for (const auto& [key, value] : values) {
    if (sub->count(flag_name(key.c_str())) == 0) continue;
    if (fh_config_set(h.cfg, key.c_str(), value.c_str()) != FH_OK) {
      std::cerr << "error: " << fh_last_error() << "\n";
      return 2;
    }
  }

  char* output = nullptr;
  char* message = nullptr;
  int exit_code = 0;
  if (fh_run(command.c_str(), h.cfg, &output, &message, &exit_code) != FH_OK) {
    std::cerr << "error: " << fh_last_error() << "\n";
    return 3;
  }
  std::fputs(output, stdout);
  std::fputs(message, stderr);
  fh_string_free(output);
  fh_string_free(message);
  return exit_code;
}
