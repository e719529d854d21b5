#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bernstein.hpp"
#include "config.hpp"
#include "error.hpp"
#include "estimates.hpp"
#include "kernels.hpp"
#include "solution.hpp"

namespace fracheat {

inline constexpr const char* kCsvHeader = "# fracheat-csv v1";

/// `stable:B`, `mixture:W,B;W,B...` (or `W@B,W@B`) or `cbf:ALPHA3` (built from `scale`).
LaplaceExponent parse_subordinator(const std::string& spec, const SpaceTimeScale& scale);
/// `power:A` or `power2:A_LOW,A_HIGH,R_BREAK`.
SpaceTimeScale parse_scale(const std::string& spec);
VolumeFunction parse_volume(const std::string& spec);
/// `gaussian:D`, `cauchy:D`, `jump` or `diffusion` (surrogates use V and Phi).
SpatialKernel parse_kernel(const std::string& spec, const VolumeFunction& volume, const SpaceTimeScale& scale);

/// Exponent, kernel and estimate model assembled from the settings. Exact
/// kernels supply V and Phi unless `scale` / `volume` are given; the flavor
/// follows the kernel unless `flavor` is set. `beta` abbreviates stable:B.
struct ModelSetup {
  LaplaceExponent exponent;
  SpatialKernel kernel;
  EstimateModel estimate_model;
  QuadratureConfig quadrature;
};

ModelSetup build_model(const Config& cfg);

struct VerifyConfig {
  Config settings;
  double t_min = 1e-3, t_max = 1e3;
  int t_points = 13;
  double z_min = 1e-3, z_max = 1e3;
  int z_points = 13;
  /// "rho": the z-range lists Phi(z) phi(1/t); "abs": it lists z itself.
  std::string z_axis = "rho";
  SolutionMethod method = SolutionMethod::Quadrature;
  std::size_t mc_samples = 100000;
  std::uint64_t seed = 1;

  /// UsageError for positive-range or point-count violations.
  static VerifyConfig from(const Config& cfg);
};

struct SandwichRow {
  double t = 0.0, z = 0.0;
  RegimeTag tag;
  double p = 0.0, p_err = 0.0;
  double estimate = 0.0;
  std::optional<double> n;
  /// p / estimate, except off-diagonal diffusion rows.
  std::optional<double> ratio;
  /// -log(p / prefactor) / n for off-diagonal diffusion rows.
  std::optional<double> log_ratio;
  SolutionMethod method = SolutionMethod::Quadrature;
  std::string failure;
};

struct RegimeSummary {
  int rows = 0;
  double min_ratio = 0.0, max_ratio = 0.0;
  double min_log_ratio = 0.0, max_log_ratio = 0.0;
  int ratio_rows = 0, log_ratio_rows = 0;
  double spread() const { return ratio_rows > 0 ? max_ratio / min_ratio : 0.0; }
};

struct SandwichReport {
  std::vector<SandwichRow> rows;
  RegimeSummary near, off;
  int failures = 0;
};

/// Evaluates p and the estimate on the (t, z) grid; rows are computed on
/// worker threads and kept in (t-index, z-index) order. Monte Carlo rows use
/// the stream index t-index * z_points + z-index.
SandwichReport verify_sandwich(const VerifyConfig& cfg);

std::string sandwich_csv(const SandwichReport& rep);

/// Worker threads: hardware concurrency capped by FRACHEAT_THREADS.
unsigned worker_count();
/// Runs body(i) for i in [0, n) on worker_count() threads. The first
/// exception thrown by any task is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

struct CommandResult {
  /// 0 ok, 1 verification failure, 2 usage, 3 nonconvergence.
  int exit_code = 0;
  /// CSV or report text for stdout (or the `out` file).
  std::string output;
  /// Diagnostics for stderr.
  std::string message;
};

/// Dispatches one of eval, estimate, verify, sample, residual, selftest.
/// Exceptions are mapped onto exit codes; usage and IO problems give 2.
CommandResult run_command(const std::string& command, const Config& cfg);

int exit_code_for(ErrorKind kind);

}  // namespace fracheat
