#pragma once

#include <optional>
#include <string>

#include "bernstein.hpp"
#include "quadrature.hpp"
#include "scale.hpp"

namespace fracheat {

enum class Flavor { Jump, Diffusion };

/// Phi is the space-time scale, V the volume function, both with weak
/// scaling indices (alpha_1, alpha_2) and (d_1, d_2).
struct EstimateModel {
  LaplaceExponent exponent;
  SpaceTimeScale scale;
  VolumeFunction volume;
  Flavor flavor = Flavor::Jump;

  /// Diffusion needs alpha_1 > 1 and alpha_1 > beta_2.
  void validate() const;
};

enum class Regime { NearDiagonal, OffDiagonal };

const char* regime_name(Regime regime);

struct RegimeTag {
  Regime regime = Regime::NearDiagonal;
  /// Phi(z) phi(1/t).
  double rho = 0.0;
};

/// NearDiagonal iff Phi(z) phi(1/t) <= 1.
RegimeTag classify(const EstimateModel& model, double t, double z);

/// int_{Phi(z) phi(1/t)}^2 dr / V(Phi^{-1}(r / phi(1/t))). Closed form when V
/// and Phi are power laws, quadrature in log r otherwise. DomainError when
/// Phi(z) phi(1/t) > 1, or at z = 0 when the small-r exponents satisfy d >= alpha.
double near_diagonal_integral(const EstimateModel& model, double t, double z, const QuadratureConfig& cfg = {});
/// The quadrature route regardless of the profile shapes.
double near_diagonal_integral_quadrature(const EstimateModel& model, double t, double z,
                                         const QuadratureConfig& cfg = {});

struct EstimateResult {
  RegimeTag tag;
  /// The estimate, or for off-diagonal diffusion the prefactor
  /// 1 / V(Phi^{-1}(1/phi(1/t))) that multiplies exp(-c n).
  double value = 0.0;
  std::optional<double> n;
};

/// Near-diagonal: near_diagonal_integral. Off-diagonal jump:
/// 1 / (phi(1/t) V(z) Phi(z)). Off-diagonal diffusion: (prefactor, n(t, z)).
EstimateResult estimate(const EstimateModel& model, double t, double z, const QuadratureConfig& cfg = {});

/// Estimate for V = r^d, Phi = r^alpha and a general exponent; near-diagonal
/// means z phi(1/t)^{1/alpha} <= 1. Off-diagonal local estimates carry the
/// exponent argument t barphi_alpha^{-1}((z/t)^alpha) in `n`.
EstimateResult dset_estimate(const LaplaceExponent& exponent, double alpha, double d, bool local, double t, double z);
EstimateResult dset_estimate(double beta, double alpha, double d, bool local, double t, double z);

/// Explicit forms for phi = lambda^beta. The off-diagonal local form uses
/// exp(-(z t^{-beta/alpha})^{alpha/(alpha-beta)}).
double h_near(double beta, double alpha, double d, double t, double z);
double h_off_local(double beta, double alpha, double d, double t, double z);
double h_off_jump(double beta, double alpha, double d, double t, double z);

enum class ProfileCase { SubCritical, SuperCritical, Critical, NotApplicable };

const char* profile_case_name(ProfileCase c);

struct ProfileCaseResult {
  ProfileCase which = ProfileCase::NotApplicable;
  double value = 0.0;
};

/// d_2 < alpha_1: 1/V(Phi^{-1}(1/phi(1/t))); d_1 > alpha_2: Phi(z) phi(1/t) / V(z);
/// all four indices equal: 1/V(Phi^{-1}(1/phi(1/t))) log(2 / (Phi(z) phi(1/t))).
/// DomainError when Phi(z) phi(1/t) > 1.
ProfileCaseResult profile_case_estimate(const EstimateModel& model, double t, double z);

}  // namespace fracheat
