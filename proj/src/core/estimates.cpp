#include "estimates.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "error.hpp"

namespace fracheat {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_tz(double t, double z) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("estimate needs finite t > 0");
  if (!(z >= 0.0) || !std::isfinite(z)) throw DomainError("estimate needs finite z >= 0");
}

double on_diagonal_scale(const EstimateModel& model, double phi1) {
  return 1.0 / model.volume(model.scale.inverse(1.0 / phi1));
}

}  // namespace

void EstimateModel::validate() const {
  if (flavor == Flavor::Diffusion) {
    if (!(scale.alpha_lo() > 1.0)) throw DomainError("diffusion estimates need alpha_1 > 1");
    if (!(scale.alpha_lo() > exponent.beta_hi())) throw DomainError("diffusion estimates need alpha_1 > beta_2");
  }
}

const char* regime_name(Regime regime) {
  return regime == Regime::NearDiagonal ? "near" : "off";
}

RegimeTag classify(const EstimateModel& model, double t, double z) {
  check_tz(t, z);
  RegimeTag tag;
  tag.rho = z == 0.0 ? 0.0 : model.scale(z) * model.exponent.value(1.0 / t);
  tag.regime = tag.rho <= 1.0 ? Regime::NearDiagonal : Regime::OffDiagonal;
  return tag;
}

double near_diagonal_integral_quadrature(const EstimateModel& model, double t, double z,
                                         const QuadratureConfig& cfg) {
  const RegimeTag tag = classify(model, t, z);
  if (tag.rho > 1.0) throw DomainError("near-diagonal integral needs Phi(z) phi(1/t) <= 1");
  // Near r = 0 the integrand behaves like r^{-d/alpha} with the small-r exponents.
  if (tag.rho == 0.0 && model.volume.exponent_low() >= model.scale.exponent_low()) {
    throw DomainError("near-diagonal integral diverges at z = 0: V(Phi^{-1}(r)) decays no faster than r");
  }
  const double phi1 = model.exponent.value(1.0 / t);
  // In u = log r the integrand is r / V(Phi^{-1}(r / phi1)).
  auto f = [&](double u) {
    const double r = std::exp(u);
    if (r == 0.0) return 0.0;
    const double radius = model.scale.inverse(r / phi1);
    return std::exp(u - model.volume.log_value(std::log(radius)));
  };
  const double lo = tag.rho == 0.0 ? -kInf : std::log(tag.rho);
  const double hi = std::log(2.0);
  std::vector<double> interior;
  for (double rb : {model.scale.r_break(), model.volume.r_break()}) {
    if (rb > 0.0 && std::isfinite(rb)) interior.push_back(std::log(phi1 * model.scale(rb)));
  }
  return quad::integrate_checked(f, quad::breakpoints(lo, hi, interior), cfg, "near-diagonal integral");
}

double near_diagonal_integral(const EstimateModel& model, double t, double z, const QuadratureConfig& cfg) {
  if (!(model.volume.is_power_law() && model.scale.is_power_law())) {
    return near_diagonal_integral_quadrature(model, t, z, cfg);
  }
  const RegimeTag tag = classify(model, t, z);
  if (tag.rho > 1.0) throw DomainError("near-diagonal integral needs Phi(z) phi(1/t) <= 1");
  const double d = model.volume.d_lo();
  const double a = model.scale.alpha_lo();
  const double phi1 = model.exponent.value(1.0 / t);
  // V(Phi^{-1}(r/phi1)) = (r/phi1)^{d/a} for unit-coefficient power laws.
  const double k = d / a;
  if (d == a) {
    if (tag.rho == 0.0) throw DomainError("near-diagonal integral diverges at z = 0 when d = alpha");
    return phi1 * std::log(2.0 / tag.rho);
  }
  if (tag.rho == 0.0 && k > 1.0) throw DomainError("near-diagonal integral diverges at z = 0 when d > alpha");
  const double e = 1.0 - k;
  return std::pow(phi1, k) * (std::pow(2.0, e) - std::pow(tag.rho, e)) / e;
}

EstimateResult estimate(const EstimateModel& model, double t, double z, const QuadratureConfig& cfg) {
  model.validate();
  EstimateResult out;
  out.tag = classify(model, t, z);
  if (out.tag.regime == Regime::NearDiagonal) {
    out.value = near_diagonal_integral(model, t, z, cfg);
    return out;
  }
  const double phi1 = model.exponent.value(1.0 / t);
  if (model.flavor == Flavor::Jump) {
    out.value = 1.0 / (phi1 * model.volume(z) * model.scale(z));
  } else {
    out.value = on_diagonal_scale(model, phi1);
    out.n = solve_n(model.scale, model.exponent, t, z);
  }
  return out;
}

EstimateResult dset_estimate(const LaplaceExponent& exponent, double alpha, double d, bool local, double t,
                             double z) {
  check_tz(t, z);
  if (!(alpha > 0.0) || !(d > 0.0)) throw DomainError("d-set estimate needs alpha > 0 and d > 0");
  if (local && alpha < 2.0) throw DomainError("local d-set estimates need walk dimension alpha >= 2");
  const double phi1 = exponent.value(1.0 / t);
  const double scaled = z * std::pow(phi1, 1.0 / alpha);
  EstimateResult out;
  out.tag.rho = std::pow(scaled, alpha);
  out.tag.regime = scaled <= 1.0 ? Regime::NearDiagonal : Regime::OffDiagonal;
  if (out.tag.regime == Regime::NearDiagonal) {
    if (d < alpha) {
      out.value = std::pow(phi1, d / alpha);
    } else if (d == alpha) {
      if (z == 0.0) throw DomainError("d-set estimate diverges at z = 0 when d = alpha");
      out.value = phi1 * std::log(2.0 / scaled);
    } else {
      if (z == 0.0) throw DomainError("d-set estimate diverges at z = 0 when d > alpha");
      out.value = phi1 / std::pow(z, d - alpha);
    }
    return out;
  }
  if (local) {
    out.value = std::pow(phi1, d / alpha);
    out.n = t * exponent.bar_phi_inverse(alpha, std::pow(z / t, alpha));
  } else {
    out.value = 1.0 / (phi1 * std::pow(z, d + alpha));
  }
  return out;
}

EstimateResult dset_estimate(double beta, double alpha, double d, bool local, double t, double z) {
  return dset_estimate(LaplaceExponent::stable(beta), alpha, d, local, t, z);
}

double h_near(double beta, double alpha, double d, double t, double z) {
  check_tz(t, z);
  const double scaled = z * std::pow(t, -beta / alpha);
  if (d < alpha) return std::pow(t, -beta * d / alpha);
  if (z == 0.0) throw DomainError("H near the diagonal diverges at z = 0 when d >= alpha");
  if (d == alpha) return std::pow(t, -beta) * std::log(2.0 / scaled);
  return std::pow(t, -beta) / std::pow(z, d - alpha);
}

double h_off_local(double beta, double alpha, double d, double t, double z) {
  check_tz(t, z);
  if (!(alpha > beta)) throw DomainError("H off the diagonal needs alpha > beta");
  const double scaled = z * std::pow(t, -beta / alpha);
  return std::pow(t, -beta * d / alpha) * std::exp(-std::pow(scaled, alpha / (alpha - beta)));
}

double h_off_jump(double beta, double alpha, double d, double t, double z) {
  check_tz(t, z);
  if (z == 0.0) throw DomainError("H off the diagonal needs z > 0");
  return std::pow(t, beta) / std::pow(z, d + alpha);
}

const char* profile_case_name(ProfileCase c) {
  switch (c) {
    case ProfileCase::SubCritical:
      return "d2<alpha1";
    case ProfileCase::SuperCritical:
      return "d1>alpha2";
    case ProfileCase::Critical:
      return "critical";
    case ProfileCase::NotApplicable:
      return "not-applicable";
  }
  return "?";
}

ProfileCaseResult profile_case_estimate(const EstimateModel& model, double t, double z) {
  const RegimeTag tag = classify(model, t, z);
  if (tag.rho > 1.0) throw DomainError("explicit near-diagonal forms need Phi(z) phi(1/t) <= 1");
  const double phi1 = model.exponent.value(1.0 / t);
  const double d1 = model.volume.d_lo(), d2 = model.volume.d_hi();
  const double a1 = model.scale.alpha_lo(), a2 = model.scale.alpha_hi();
  ProfileCaseResult out;
  if (d2 < a1) {
    out.which = ProfileCase::SubCritical;
    out.value = on_diagonal_scale(model, phi1);
  } else if (d1 > a2) {
    if (z == 0.0) throw DomainError("the d_1 > alpha_2 form diverges at z = 0");
    out.which = ProfileCase::SuperCritical;
    out.value = tag.rho / model.volume(z);
  } else if (d1 == d2 && d2 == a1 && a1 == a2) {
    if (z == 0.0) throw DomainError("the critical form diverges at z = 0");
    out.which = ProfileCase::Critical;
    out.value = on_diagonal_scale(model, phi1) * std::log(2.0 / tag.rho);
  }
  return out;
}

}  // namespace fracheat
