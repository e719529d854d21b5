#pragma once

#include <string>
#include <vector>

#include "scale.hpp"

namespace fracheat {

enum class KernelKind { ExactGaussian, ExactCauchy, JumpSurrogate, DiffusionSurrogate };

/// Radially symmetric heat kernel q(t, z), z = |x - y|.
///   ExactGaussian(d): (4 pi t)^{-d/2} exp(-z^2 / (4t))
///   ExactCauchy(d):   Gamma((d+1)/2) / pi^{(d+1)/2} t / (t^2 + z^2)^{(d+1)/2}
///   JumpSurrogate:    t / (t V(Phi^{-1}(t)) + Phi(z) V(z))
///   DiffusionSurrogate: exp(-m(t,z)) / V(Phi^{-1}(t))
class SpatialKernel {
 public:
  static SpatialKernel gaussian(int d);
  static SpatialKernel cauchy(int d);
  static SpatialKernel jump(VolumeFunction volume, SpaceTimeScale scale);
  /// Throws DomainError unless alpha_1 > 1.
  static SpatialKernel diffusion(VolumeFunction volume, SpaceTimeScale scale);

  KernelKind kind() const noexcept { return kind_; }
  bool is_exact() const noexcept { return kind_ == KernelKind::ExactGaussian || kind_ == KernelKind::ExactCauchy; }
  int dimension() const noexcept { return d_; }
  const VolumeFunction& volume() const noexcept { return volume_; }
  const SpaceTimeScale& scale() const noexcept { return scale_; }

  double operator()(double t, double z) const { return eval(t, z); }
  double eval(double t, double z) const;
  double log_eval(double t, double z) const;

  /// Exponent a with q(t, 0) ~ t^{-a} as t -> 0; the on-diagonal value of a
  /// subordinated kernel is finite iff a < 1.
  double small_time_diagonal_exponent() const;

  std::string describe() const;

 private:
  SpatialKernel(KernelKind kind, int d, VolumeFunction volume, SpaceTimeScale scale);

  KernelKind kind_;
  int d_;
  VolumeFunction volume_;
  SpaceTimeScale scale_;
  double cauchy_norm_ = 0.0;
};

struct DerivativeReport {
  bool pass = false;
  /// Jump: max |t dq/dt| / q. Diffusion: max |t dq/dt| V(Phi^{-1}(t)) exp(m/2).
  double c1 = 0.0;
  /// Largest rho = Phi(z)/t such that dq/dt < 0 at every grid rho up to it.
  double c_lower = 0.0;
  /// Smallest rho such that dq/dt > 0 at every grid rho from it on.
  double c_upper = 0.0;
  /// min of -t dq/dt / q below c_lower and of t dq/dt / q above c_upper.
  double decay_rate = 0.0;
  double growth_rate = 0.0;
  /// Grid cells where the step-h and step-h/2 derivatives differed by > 1e-3.
  int richardson_corrections = 0;
  std::vector<std::string> failures;
};

/// Time-derivative structure of a surrogate kernel on the grid t x rho,
/// z = Phi^{-1}(rho t). d/dt log q is taken by central differences with
/// h = 1e-5 t and a Richardson step when h and h/2 disagree.
DerivativeReport qbar_derivative_check(const SpatialKernel& kernel, const std::vector<double>& t_grid,
                                       const std::vector<double>& rho_grid);

}  // namespace fracheat
