#include "scale.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bernstein.hpp"
#include "error.hpp"
#include "roots.hpp"

namespace fracheat {

PowerProfile::PowerProfile(double a_low, double a_high, double r_break)
    : a_low_(a_low), a_high_(a_high), r_break_(r_break) {
  if (!(a_low > 0.0 && a_high > 0.0) || !std::isfinite(a_low) || !std::isfinite(a_high)) {
    throw DomainError("power profile exponents must be positive and finite");
  }
  if (!(r_break > 0.0) || !std::isfinite(r_break)) throw DomainError("power profile break must be positive");
}

PowerProfile PowerProfile::power(double a) { return PowerProfile(a, a, 1.0); }

PowerProfile PowerProfile::piecewise(double a_low, double a_high, double r_break) {
  return PowerProfile(a_low, a_high, r_break);
}

double PowerProfile::index_lo() const noexcept { return std::min(a_low_, a_high_); }
double PowerProfile::index_hi() const noexcept { return std::max(a_low_, a_high_); }

double PowerProfile::operator()(double r) const {
  if (r <= 0.0) return 0.0;
  if (is_power_law()) return std::pow(r, a_low_);
  if (r <= r_break_) return std::pow(r, a_low_);
  return std::pow(r_break_, a_low_) * std::pow(r / r_break_, a_high_);
}

double PowerProfile::inverse(double y) const {
  if (y <= 0.0) return 0.0;
  if (is_power_law()) return std::pow(y, 1.0 / a_low_);
  const double y_break = std::pow(r_break_, a_low_);
  if (y <= y_break) return std::pow(y, 1.0 / a_low_);
  return r_break_ * std::pow(y / y_break, 1.0 / a_high_);
}

double PowerProfile::log_value(double log_r) const {
  const double log_break = std::log(r_break_);
  if (is_power_law() || log_r <= log_break) return a_low_ * log_r;
  return a_low_ * log_break + a_high_ * (log_r - log_break);
}

double PowerProfile::log_slope(double r) const {
  if (is_power_law() || r <= r_break_) return a_low_;
  return a_high_;
}

std::string PowerProfile::describe() const {
  std::ostringstream out;
  if (is_power_law()) {
    out << "power:" << a_low_;
  } else {
    out << "power2:" << a_low_ << "," << a_high_ << "," << r_break_;
  }
  return out.str();
}

SpaceTimeScale SpaceTimeScale::power(double alpha) { return SpaceTimeScale(alpha, alpha, 1.0); }
SpaceTimeScale SpaceTimeScale::piecewise(double alpha_low, double alpha_high, double r_break) {
  return SpaceTimeScale(alpha_low, alpha_high, r_break);
}

VolumeFunction VolumeFunction::power(double d) { return VolumeFunction(d, d, 1.0); }
VolumeFunction VolumeFunction::piecewise(double d_low, double d_high, double r_break) {
  return VolumeFunction(d_low, d_high, r_break);
}

namespace {

void check_positive(double t, double r) {
  if (!(t > 0.0) || !(r > 0.0) || !std::isfinite(t) || !std::isfinite(r)) {
    throw DomainError("scale solvers need finite t > 0 and r > 0");
  }
}

void check_m(const SpaceTimeScale& scale, double t, double r) {
  check_positive(t, r);
  if (!(scale.alpha_lo() > 1.0)) throw DomainError("m(t,r) needs alpha_1 > 1");
}

void check_n(const SpaceTimeScale& scale, const LaplaceExponent& exponent, double t, double r) {
  check_positive(t, r);
  if (!(scale.alpha_lo() > exponent.beta_hi())) throw DomainError("n(t,r) needs alpha_1 > beta_2");
}

}  // namespace

double solve_m_bisection(const SpaceTimeScale& scale, double t, double r) {
  check_m(scale, t, r);
  const double log_t = std::log(t), log_r = std::log(r);
  // log Phi(r/m) - log(t/m) decreases in m with slope <= 1 - alpha_1 < 0.
  return roots::increasing_root(
      [&](double m) {
        const double log_m = std::log(m);
        return (log_t - log_m) - scale.log_value(log_r - log_m);
      },
      "m(t,r)");
}

double solve_m(const SpaceTimeScale& scale, double t, double r) {
  check_m(scale, t, r);
  if (scale.is_power_law()) {
    const double a = scale.exponent_low();
    return std::pow(std::pow(r, a) / t, 1.0 / (a - 1.0));
  }
  return solve_m_bisection(scale, t, r);
}

double solve_n_bisection(const SpaceTimeScale& scale, const LaplaceExponent& exponent, double t, double r) {
  check_n(scale, exponent, t, r);
  const double log_r = std::log(r);
  // log Phi(r/n) + log phi(n/t) is strictly decreasing in n.
  return roots::increasing_root(
      [&](double n) { return -(scale.log_value(log_r - std::log(n)) + std::log(exponent.value(n / t))); },
      "n(t,r)");
}

double solve_n(const SpaceTimeScale& scale, const LaplaceExponent& exponent, double t, double r) {
  check_n(scale, exponent, t, r);
  if (scale.is_power_law() && exponent.kind() == ExponentKind::Stable) {
    const double a = scale.exponent_low();
    const double b = exponent.beta_lo();
    return std::pow(r * std::pow(t, -b / a), a / (a - b));
  }
  return solve_n_bisection(scale, exponent, t, r);
}

}  // namespace fracheat
