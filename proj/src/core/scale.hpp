#pragma once

#include <string>

namespace fracheat {

class LaplaceExponent;

/// r -> r^a, or two powers glued continuously at r_break:
/// r^a_low for r <= r_break and r_break^a_low (r/r_break)^a_high beyond.
class PowerProfile {
 public:
  static PowerProfile power(double a);
  static PowerProfile piecewise(double a_low, double a_high, double r_break);

  bool is_power_law() const noexcept { return a_low_ == a_high_; }
  double exponent_low() const noexcept { return a_low_; }
  double exponent_high() const noexcept { return a_high_; }
  double r_break() const noexcept { return r_break_; }
  double index_lo() const noexcept;
  double index_hi() const noexcept;

  double operator()(double r) const;
  double inverse(double y) const;
  double log_value(double log_r) const;
  /// d log f / d log r at r.
  double log_slope(double r) const;

  std::string describe() const;

 protected:
  PowerProfile(double a_low, double a_high, double r_break);

 private:
  double a_low_;
  double a_high_;
  double r_break_;
};

/// Space-time scale Phi with scaling indices (alpha_1, alpha_2).
class SpaceTimeScale : public PowerProfile {
 public:
  static SpaceTimeScale power(double alpha);
  static SpaceTimeScale piecewise(double alpha_low, double alpha_high, double r_break);
  double alpha_lo() const noexcept { return index_lo(); }
  double alpha_hi() const noexcept { return index_hi(); }

 private:
  using PowerProfile::PowerProfile;
};

/// Radial volume profile V with indices (d_1, d_2).
class VolumeFunction : public PowerProfile {
 public:
  static VolumeFunction power(double d);
  static VolumeFunction piecewise(double d_low, double d_high, double r_break);
  double d_lo() const noexcept { return index_lo(); }
  double d_hi() const noexcept { return index_hi(); }

 private:
  using PowerProfile::PowerProfile;
};

/// The m > 0 solving t/m = Phi(r/m). Closed form for power laws.
/// Throws DomainError unless alpha_1 > 1 and t, r > 0.
double solve_m(const SpaceTimeScale& scale, double t, double r);
double solve_m_bisection(const SpaceTimeScale& scale, double t, double r);

/// The n > 0 solving 1/phi(n/t) = Phi(r/n). Closed form when both Phi and
/// phi are pure powers. Throws DomainError unless alpha_1 > beta_2.
double solve_n(const SpaceTimeScale& scale, const LaplaceExponent& exponent, double t, double r);
double solve_n_bisection(const SpaceTimeScale& scale, const LaplaceExponent& exponent, double t, double r);

}  // namespace fracheat
