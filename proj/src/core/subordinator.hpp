#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "bernstein.hpp"
#include "quadrature.hpp"
#include "rng.hpp"

namespace fracheat {

/// One-sided stable law S_1 with E exp(-lambda S_1) = exp(-lambda^beta),
/// evaluated through Zolotarev's integral over theta in (0, pi) with
///   A(theta) = sin(beta theta)^{beta/(1-beta)} sin((1-beta) theta) / sin(theta)^{1/(1-beta)}.
namespace stable {

double density(double beta, double x);
double log_density(double beta, double x);
double cdf(double beta, double x);
double log_cdf(double beta, double x);
double survival(double beta, double x);
/// Density of E_1 = S_1^{-beta}, i.e. of the inverse subordinator at t = 1:
/// (1/beta) e^{-1-1/beta} g_beta(e^{-1/beta}).
double inverse_density(double beta, double e);
double log_inverse_density(double beta, double e);
/// Kanter's representation: (A(theta)/W)^{(1-beta)/beta} with theta ~ U(0,pi), W ~ Exp(1).
double sample(double beta, RngStream& rng);

}  // namespace stable

struct KsBounds {
  /// Exact KS terms at the evaluated order statistics.
  double lower = 0.0;
  /// Bound from monotonicity of the CDF between evaluated order statistics.
  double upper = 0.0;
  std::size_t cdf_evaluations = 0;
};

/// Brackets sup |F_n - F| for sorted draws by evaluating F at every
/// `stride`-th order statistic and at the last one.
KsBounds ks_distance_bounds(const std::vector<double>& sorted, const std::function<double(double)>& cdf,
                            std::size_t stride);

/// Laws of S_r and of the inverse subordinator E_t = inf{s > 0 : S_s > t}.
/// Distribution paths support Stable and StableMixture exponents; mixtures
/// are handled by recursive convolution of the component laws.
class SubordinatorModel {
 public:
  explicit SubordinatorModel(LaplaceExponent exponent, QuadratureConfig cfg = {});

  const LaplaceExponent& exponent() const noexcept { return exponent_; }
  const QuadratureConfig& quadrature() const noexcept { return cfg_; }

  /// P(S_r <= t).
  double cdf(double r, double t) const;
  double log_cdf(double r, double t) const;
  /// P(S_r >= t).
  double survival(double r, double t) const;
  /// Density of S_r at t.
  double density_S(double r, double t) const;
  /// P(E_t <= r) = P(S_r >= t).
  double cdf_E(double t, double r) const { return survival(r, t); }
  /// Density of E_t at r.
  double density_E(double t, double r) const;

  double sample_S(double r, RngStream& rng) const;
  /// Exact scaling identity for Stable; path discretisation for mixtures
  /// with step path_fraction / phi(1/t).
  double sample_E(double t, RngStream& rng) const;
  /// First passage of a discretised path with step fraction / phi(1/t),
  /// linearly interpolated inside the crossing step.
  double sample_E_path(double t, RngStream& rng, double fraction) const;

  double path_fraction() const noexcept { return path_fraction_; }
  void set_path_fraction(double fraction);
  /// Halves the path step until two pilot means (n draws each, common seed)
  /// differ by less than rel_tol, starting from `start`. Returns the fraction.
  double calibrate_path_fraction(double t, std::size_t n, std::uint64_t seed, double rel_tol = 1e-3,
                                 double start = 1e-2) const;

 private:
  void require_distribution() const;
  double mixture_log_cdf(std::size_t k, double r, double t) const;
  double mixture_survival(std::size_t k, double r, double t) const;

  LaplaceExponent exponent_;
  QuadratureConfig cfg_;
  double path_fraction_ = 1e-3;
};

struct GridPoint {
  double r, t;
};

/// Fitted constants for the subordinator tail bounds. A bound "passes" when
/// its fitted constant is finite and positive.
struct TailBoundsReport {
  bool pass = false;
  /// max P(S_r >= t(1 + e r phi(1/t))) / (r phi(1/t)).
  double c_es1 = 0.0;
  /// min -log P(S_r < t) / (r phi(1/t)): largest c with P(S_r >= t) >= 1 - exp(-c r phi(1/t)).
  double c_es2 = 0.0;
  /// min -log P(S_r <= t) / (r phi((phi')^{-1}(t/r))).
  double c_upper = 0.0;
  /// min -log P(S_r <= t) / (t (phi')^{-1}(t/r)).
  double c_upper_second = 0.0;
  /// sup -log P(S_r <= t) / (r phi((phi')^{-1}(t/r))) over r phi(1/t) > lower_L, prefactor 1.
  double c0_lower = 0.0;
  double lower_L = 1.0;
  /// Range of P(S_r >= t) / (r phi(1/t)) over r phi(1/t) <= 1.
  double ratio_lo = 0.0, ratio_hi = 0.0;
  int rows = 0;
  int near_rows = 0;
  int far_rows = 0;
  std::vector<std::string> failures;
};

TailBoundsReport subordinator_tail_bounds(const SubordinatorModel& model, const std::vector<GridPoint>& grid,
                           double lower_L = 1.0);

struct TimeIdentityReport {
  /// |int_0^inf E[G(t - S_r); S_r <= t] dr - t| / t.
  double renewal_residual = 0.0;
  /// Relative residuals of the first identity at s = t/2, t, 2t.
  std::vector<double> first_identity_residuals;
};

TimeIdentityReport time_identities(const SubordinatorModel& model, double t);

}  // namespace fracheat
