#include "bernstein.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "error.hpp"
#include "roots.hpp"

namespace fracheat {

struct LaplaceExponent::Constructed {
  SpaceTimeScale scale;
  double alpha3;
  QuadratureConfig cfg;
};

namespace {

void check_beta(double beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw DomainError("stable index must lie in (0,1)");
}

void check_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("phi needs a finite argument > 0");
}

// log(1 / (1 + e^{-a})) without overflow.
double log_logistic(double a) {
  if (a > 0.0) return -std::log1p(std::exp(-a));
  return a - std::log1p(std::exp(a));
}

}  // namespace

LaplaceExponent LaplaceExponent::stable(double beta) {
  check_beta(beta);
  LaplaceExponent e;
  e.kind_ = ExponentKind::Stable;
  e.beta_lo_ = e.beta_hi_ = beta;
  e.components_ = {{1.0, beta}};
  return e;
}

LaplaceExponent LaplaceExponent::mixture(std::vector<StableComponent> components) {
  if (components.empty()) throw DomainError("stable mixture needs at least one component");
  double lo = 1.0, hi = 0.0;
  for (const auto& c : components) {
    check_beta(c.beta);
    if (!(c.weight > 0.0) || !std::isfinite(c.weight)) throw DomainError("mixture weights must be positive");
    lo = std::min(lo, c.beta);
    hi = std::max(hi, c.beta);
  }
  LaplaceExponent e;
  e.kind_ = ExponentKind::StableMixture;
  e.beta_lo_ = lo;
  e.beta_hi_ = hi;
  e.components_ = std::move(components);
  return e;
}

LaplaceExponent LaplaceExponent::constructed(const SpaceTimeScale& scale, double alpha3, QuadratureConfig cfg) {
  cfg.validate();
  if (!(alpha3 > scale.alpha_hi()) || !std::isfinite(alpha3)) {
    throw DomainError("constructed exponent needs alpha3 > alpha_2 of the scale");
  }
  LaplaceExponent e;
  e.kind_ = ExponentKind::ConstructedCBF;
  e.beta_lo_ = scale.alpha_lo() / alpha3;
  e.beta_hi_ = scale.alpha_hi() / alpha3;
  e.constructed_ = std::make_shared<const Constructed>(Constructed{scale, alpha3, cfg});
  return e;
}

LaplaceExponent cbf_from_scale(const SpaceTimeScale& scale, double alpha3, QuadratureConfig cfg) {
  return LaplaceExponent::constructed(scale, alpha3, cfg);
}

double LaplaceExponent::constructed_value(double lambda) const {
  const Constructed& c = *constructed_;
  const double a3 = c.alpha3;
  // u = u0 e^y with u0 = lambda^{-1/alpha3}, so lambda u^alpha3 = e^{alpha3 y}.
  const double log_u0 = -std::log(lambda) / a3;
  auto f = [&](double y) {
    return std::exp(log_logistic(a3 * y) - c.scale.log_value(log_u0 + y));
  };
  std::vector<double> interior{-8.0 / a3, -2.0 / a3, 0.0, 2.0 / a3, 8.0 / a3};
  if (!c.scale.is_power_law()) interior.push_back(std::log(c.scale.r_break()) - log_u0);
  const auto pts = quad::breakpoints(-std::numeric_limits<double>::infinity(),
                                     std::numeric_limits<double>::infinity(), interior);
  return a3 * quad::integrate_checked(f, pts, c.cfg, "constructed Laplace exponent");
}

double LaplaceExponent::value(double lambda) const {
  check_lambda(lambda);
  if (kind_ == ExponentKind::ConstructedCBF) return constructed_value(lambda);
  double sum = 0.0;
  for (const auto& c : components_) sum += c.weight * std::pow(lambda, c.beta);
  return sum;
}

double LaplaceExponent::derivative(double lambda) const {
  check_lambda(lambda);
  if (kind_ == ExponentKind::ConstructedCBF) {
    const double h = lambda * 1e-6;
    return (constructed_value(lambda + h) - constructed_value(lambda - h)) / (2.0 * h);
  }
  double sum = 0.0;
  for (const auto& c : components_) sum += c.weight * c.beta * std::pow(lambda, c.beta - 1.0);
  return sum;
}

double LaplaceExponent::inverse(double y) const {
  if (!(y > 0.0) || !std::isfinite(y)) throw DomainError("phi inverse needs y > 0");
  if (kind_ == ExponentKind::Stable) return std::pow(y, 1.0 / beta_lo_);
  const double log_y = std::log(y);
  return roots::increasing_root([&](double s) { return std::log(value(s)) - log_y; }, "phi inverse");
}

double LaplaceExponent::derivative_inverse(double y) const {
  if (!(y > 0.0) || !std::isfinite(y)) throw DomainError("(phi')^{-1} needs y > 0");
  if (kind_ == ExponentKind::Stable) return std::pow(y / beta_lo_, 1.0 / (beta_lo_ - 1.0));
  const double log_y = std::log(y);
  return roots::increasing_root([&](double s) { return log_y - std::log(derivative(s)); }, "(phi')^{-1}");
}

double LaplaceExponent::levy_tail(double s) const {
  if (kind_ == ExponentKind::ConstructedCBF) {
    throw UnsupportedModelError("the Levy tail of a constructed exponent is not available in closed form");
  }
  if (!(s > 0.0)) throw DomainError("Levy tail needs s > 0");
  double sum = 0.0;
  for (const auto& c : components_) sum += c.weight * std::pow(s, -c.beta) / std::tgamma(1.0 - c.beta);
  return sum;
}

double LaplaceExponent::integrated_levy_tail(double x) const {
  if (kind_ == ExponentKind::ConstructedCBF) {
    throw UnsupportedModelError("G is not available in closed form for a constructed exponent");
  }
  if (!(x >= 0.0)) throw DomainError("G needs x >= 0");
  if (x == 0.0) return 0.0;
  double sum = 0.0;
  for (const auto& c : components_) sum += c.weight * std::pow(x, 1.0 - c.beta) / std::tgamma(2.0 - c.beta);
  return sum;
}

double LaplaceExponent::bar_phi(double alpha, double lambda) const {
  if (!(alpha > beta_hi_)) throw DomainError("bar_phi_alpha needs alpha > beta_2");
  check_lambda(lambda);
  return std::pow(lambda, alpha) / value(lambda);
}

double LaplaceExponent::bar_phi_inverse(double alpha, double y) const {
  if (!(alpha > beta_hi_)) throw DomainError("bar_phi_alpha needs alpha > beta_2");
  if (!(y > 0.0) || !std::isfinite(y)) throw DomainError("bar_phi_alpha inverse needs y > 0");
  if (kind_ == ExponentKind::Stable) return std::pow(y, 1.0 / (alpha - beta_lo_));
  const double log_y = std::log(y);
  return roots::increasing_root(
      [&](double s) { return alpha * std::log(s) - std::log(value(s)) - log_y; }, "bar_phi_alpha inverse");
}

std::string LaplaceExponent::describe() const {
  std::ostringstream out;
  switch (kind_) {
    case ExponentKind::Stable:
      out << "stable:" << beta_lo_;
      break;
    case ExponentKind::StableMixture:
      out << "mixture:";
      for (std::size_t i = 0; i < components_.size(); ++i) {
        if (i) out << ";";
        out << components_[i].weight << "," << components_[i].beta;
      }
      break;
    case ExponentKind::ConstructedCBF:
      out << "constructed:" << constructed_->scale.describe() << "," << constructed_->alpha3;
      break;
  }
  return out.str();
}

ScalingReport check_scaling(const LaplaceExponent& exponent, const std::vector<double>& lambdas,
                            const std::vector<double>& kappas) {
  ScalingReport rep;
  if (lambdas.empty() || kappas.empty()) {
    rep.failures.push_back("empty grid");
    return rep;
  }
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const double b1 = exponent.beta_lo(), b2 = exponent.beta_hi();
  rep.min_slope_defect = kInf;
  rep.c1 = rep.c3 = rep.c5 = kInf;
  rep.c2 = rep.c4 = rep.c6 = 0.0;
  rep.fitted_beta_lo = kInf;
  rep.fitted_beta_hi = -kInf;
  for (double l : lambdas) {
    const double p = exponent.value(l);
    const double dp = exponent.derivative(l);
    const double slope = l * dp / p;
    rep.min_slope_defect = std::min(rep.min_slope_defect, 1.0 - slope);
    rep.c_star = std::max(rep.c_star, 1.0 / slope);
    rep.fitted_beta_lo = std::min(rep.fitted_beta_lo, slope);
    rep.fitted_beta_hi = std::max(rep.fitted_beta_hi, slope);
    const double inv = exponent.derivative_inverse(dp);
    for (double k : kappas) {
      const double ratio = exponent.value(k * l) / p;
      rep.c1 = std::min(rep.c1, ratio / std::pow(k, b1));
      rep.c2 = std::max(rep.c2, ratio / std::pow(k, b2));
      const double dratio = dp / exponent.derivative(k * l);
      rep.c3 = std::min(rep.c3, dratio / std::pow(k, 1.0 - b2));
      rep.c4 = std::max(rep.c4, dratio / std::pow(k, 1.0 - b1));
      const double iratio = inv / exponent.derivative_inverse(k * dp);
      rep.c5 = std::min(rep.c5, iratio / std::pow(k, 1.0 / (1.0 - b1)));
      rep.c6 = std::max(rep.c6, iratio / std::pow(k, 1.0 / (1.0 - b2)));
    }
  }
  if (rep.min_slope_defect < -1e-9) rep.failures.push_back("lambda phi' <= phi violated");
  auto finite_positive = [&](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) rep.failures.push_back(std::string(name) + " not finite and positive");
  };
  finite_positive(rep.c_star, "C*");
  finite_positive(rep.c1, "c1");
  finite_positive(rep.c2, "c2");
  finite_positive(rep.c3, "c3");
  finite_positive(rep.c4, "c4");
  finite_positive(rep.c5, "c5");
  finite_positive(rep.c6, "c6");
  rep.pass = rep.failures.empty();
  return rep;
}

bool complete_monotonicity_spot_check(const LaplaceExponent& exponent, const std::vector<double>& lambdas,
                                      double rel_step) {
  auto f = [&](double l) { return exponent.value(l) / l; };
  for (double l : lambdas) {
    const double h = rel_step * l;
    const double f0 = f(l), fp = f(l + h), fm = f(l - h), fpp = f(l + 2 * h), fmm = f(l - 2 * h);
    const double d1 = (fp - fm) / (2 * h);
    const double d2 = (fp - 2 * f0 + fm) / (h * h);
    const double d3 = (fpp - 2 * fp + 2 * fm - fmm) / (2 * h * h * h);
    if (!(f0 > 0.0 && d1 < 0.0 && d2 > 0.0 && d3 < 0.0)) return false;
  }
  return true;
}

}  // namespace fracheat
