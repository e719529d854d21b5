#pragma once

#include <memory>
#include <string>
#include <vector>

#include "quadrature.hpp"
#include "scale.hpp"

namespace fracheat {

enum class ExponentKind { Stable, StableMixture, ConstructedCBF };

/// One term a * lambda^beta of a stable mixture.
struct StableComponent {
  double weight;
  double beta;
};

/// Laplace exponent phi of a driftless subordinator. Stable(beta) is the
/// one-component mixture with unit weight. ConstructedCBF evaluates
///   phi(lambda) = alpha3 int_0^inf lambda u^alpha3 / (lambda u^alpha3 + 1) du / (u Phi(u))
/// by quadrature. Values are immutable and safe to share between threads.
class LaplaceExponent {
 public:
  static LaplaceExponent stable(double beta);
  static LaplaceExponent mixture(std::vector<StableComponent> components);
  /// Throws DomainError unless alpha3 > alpha_2 of the scale.
  static LaplaceExponent constructed(const SpaceTimeScale& scale, double alpha3, QuadratureConfig cfg = {});

  ExponentKind kind() const noexcept { return kind_; }
  double beta_lo() const noexcept { return beta_lo_; }
  double beta_hi() const noexcept { return beta_hi_; }
  /// Stable and mixture components; empty for ConstructedCBF.
  const std::vector<StableComponent>& components() const noexcept { return components_; }

  double value(double lambda) const;
  double derivative(double lambda) const;
  /// The lambda with phi(lambda) = y.
  double inverse(double y) const;
  /// inf{s > 0 : phi'(s) <= y}.
  double derivative_inverse(double y) const;

  /// w(s) = nu(s, inf). UnsupportedModelError for ConstructedCBF.
  double levy_tail(double s) const;
  /// G(x) = int_0^x w(s) ds. UnsupportedModelError for ConstructedCBF.
  double integrated_levy_tail(double x) const;

  /// lambda^alpha / phi(lambda); DomainError unless alpha > beta_2.
  double bar_phi(double alpha, double lambda) const;
  /// inf{s > 0 : bar_phi(alpha, s) >= y}.
  double bar_phi_inverse(double alpha, double y) const;

  std::string describe() const;

 private:
  struct Constructed;
  LaplaceExponent() = default;
  double constructed_value(double lambda) const;

  ExponentKind kind_ = ExponentKind::Stable;
  double beta_lo_ = 0.5;
  double beta_hi_ = 0.5;
  std::vector<StableComponent> components_;
  std::shared_ptr<const Constructed> constructed_;
};

LaplaceExponent cbf_from_scale(const SpaceTimeScale& scale, double alpha3, QuadratureConfig cfg = {});

struct ScalingReport {
  bool pass = false;
  /// min over the grid of (phi - lambda phi') / phi; must be >= -1e-9.
  double min_slope_defect = 0.0;
  /// smallest C* with phi <= C* lambda phi'.
  double c_star = 0.0;
  /// c1 k^beta1 <= phi(k l)/phi(l) <= c2 k^beta2.
  double c1 = 0.0, c2 = 0.0;
  /// c3 k^(1-beta2) <= phi'(l)/phi'(k l) <= c4 k^(1-beta1).
  double c3 = 0.0, c4 = 0.0;
  /// c5 k^(1/(1-beta1)) <= (phi')^-1(l)/(phi')^-1(k l) <= c6 k^(1/(1-beta2)).
  double c5 = 0.0, c6 = 0.0;
  /// Range of the local slope lambda phi'/phi over the grid.
  double fitted_beta_lo = 0.0, fitted_beta_hi = 0.0;
  std::vector<std::string> failures;
};

/// Scaling and slope structure check on a grid of lambdas and kappas >= 1.
ScalingReport check_scaling(const LaplaceExponent& exponent, const std::vector<double>& lambdas,
                            const std::vector<double>& kappas);

/// Sign pattern of (-1)^n d^n/dl^n [phi(l)/l] for n = 0..3 by central
/// differences with relative step `rel_step`. Returns true when every sampled
/// derivative has the expected sign.
bool complete_monotonicity_spot_check(const LaplaceExponent& exponent, const std::vector<double>& lambdas,
                                      double rel_step = 0.05);

}  // namespace fracheat
