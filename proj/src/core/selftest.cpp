#include "selftest.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>

#include "bernstein.hpp"
#include "config.hpp"
#include "error.hpp"
#include "estimates.hpp"
#include "kernels.hpp"
#include "scale.hpp"
#include "solution.hpp"
#include "special.hpp"
#include "subordinator.hpp"

namespace fracheat {
namespace {

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

using Check = std::function<SelfTestCase()>;

SelfTestCase run_one(const std::string& name, const Check& check) {
  try {
    SelfTestCase c = check();
    c.name = name;
    return c;
  } catch (const std::exception& e) {
    return {name, false, std::string("threw: ") + e.what()};
  }
}

SelfTestCase mittag_leffler_half() {
  double worst = 0.0;
  for (double x : {0.0, 0.3, 1.0, 2.5, 8.0, 20.0, 49.0}) {
    const double ref = std::exp(x * x) * std::erfc(x);
    worst = std::max(worst, std::abs(special::mittag_leffler(0.5, x) - ref));
  }
  return {"", worst < 1e-9, fmt("max abs error %.2e", worst)};
}

SelfTestCase stable_half_density() {
  double worst = 0.0;
  for (double x : {0.05, 0.5, 1.0, 5.0, 50.0}) {
    const double ref = std::pow(x, -1.5) * std::exp(-0.25 / x) / (2.0 * std::sqrt(std::numbers::pi));
    worst = std::max(worst, rel(stable::density(0.5, x), ref));
  }
  return {"", worst < 1e-8, fmt("max rel error %.2e", worst)};
}

SelfTestCase subordinator_cdf_half() {
  const SubordinatorModel model(LaplaceExponent::stable(0.5));
  double worst = 0.0;
  for (double r : {0.01, 0.3, 4.0, 100.0}) {
    for (double t : {0.01, 1.0, 100.0}) {
      worst = std::max(worst, std::abs(model.cdf(r, t) - std::erfc(r / (2.0 * std::sqrt(t)))));
    }
  }
  return {"", worst < 1e-10, fmt("max abs error %.2e", worst)};
}

SelfTestCase on_diagonal_value() {
  const SubordinatorModel model(LaplaceExponent::stable(0.5));
  const double ref = std::tgamma(0.25) / (std::pow(4.0, 0.75) * std::numbers::pi);
  const double quad = p_quadrature(SpatialKernel::gaussian(1), model, 1.0, 0.0).value;
  const double fourier = p_fourier_oracle(0.5, 2.0, 1, 1.0, 0.0).value;
  const double e = std::max(rel(quad, ref), rel(fourier, ref));
  return {"", e < 1e-8, fmt("p(1,0) quad %.12g, fourier %.12g", quad, fourier)};
}

SelfTestCase fourier_agrees_off_diagonal() {
  const SubordinatorModel model(LaplaceExponent::stable(0.5));
  const double quad = p_quadrature(SpatialKernel::cauchy(1), model, 1.0, 2.0).value;
  const double fourier = p_fourier_oracle(0.5, 1.0, 1, 1.0, 2.0).value;
  return {"", rel(quad, fourier) < 1e-7, fmt("quad %.12g, fourier %.12g", quad, fourier)};
}

SelfTestCase mass_conserved() {
  const SubordinatorModel model(LaplaceExponent::stable(0.5));
  const double r = mass_residual(SpatialKernel::gaussian(1), model, 1.0);
  return {"", r < 1e-6, fmt("residual %.2e", r)};
}

SelfTestCase scale_closed_forms() {
  const auto phi = SpaceTimeScale::power(2.0);
  const auto exponent = LaplaceExponent::stable(0.5);
  const double m = solve_m(phi, 0.7, 3.0), mb = solve_m_bisection(phi, 0.7, 3.0);
  const double n = solve_n(phi, exponent, 0.7, 3.0), nb = solve_n_bisection(phi, exponent, 0.7, 3.0);
  const double e = std::max(rel(mb, m), rel(nb, n));
  return {"", e < 1e-10, fmt("m %.12g, n %.12g", m, n)};
}

SelfTestCase exponent_structure() {
  std::vector<double> lambdas, kappas{1.0, 10.0, 100.0};
  for (int i = -6; i <= 6; ++i) lambdas.push_back(std::pow(10.0, i));
  const auto mix = LaplaceExponent::mixture({{0.5, 0.3}, {0.5, 0.7}});
  const ScalingReport rep = check_scaling(mix, lambdas, kappas);
  const bool cm = complete_monotonicity_spot_check(mix, lambdas);
  return {"", rep.pass && cm, fmt("slope defect %.2e, C* %.4g", rep.min_slope_defect, rep.c_star)};
}

SelfTestCase estimate_regimes() {
  const EstimateModel model{LaplaceExponent::stable(0.5), SpaceTimeScale::power(1.0), VolumeFunction::power(1.0),
                            Flavor::Jump};
  const auto near = estimate(model, 1.0, 0.5);
  const auto off = estimate(model, 1.0, 10.0);
  const double closed = std::log(2.0 / 0.5);
  const bool ok = near.tag.regime == Regime::NearDiagonal && off.tag.regime == Regime::OffDiagonal &&
                  rel(near.value, closed) < 1e-12 && rel(off.value, 0.01) < 1e-12;
  return {"", ok, fmt("near %.12g, off %.12g", near.value, off.value)};
}

SelfTestCase sampler_mean_of_inverse() {
  // E[E_1] = 1 / Gamma(1 + beta) for a stable subordinator.
  const SubordinatorModel model(LaplaceExponent::stable(0.5));
  RngStream rng(7, 0);
  const int n = 20000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double e = model.sample_E(1.0, rng);
    sum += e;
    sum2 += e * e;
  }
  const double mean = sum / n;
  const double se = std::sqrt((sum2 / n - mean * mean) / n);
  const double ref = 1.0 / std::tgamma(1.5);
  return {"", std::abs(mean - ref) < 5.0 * se, fmt("mean %.6g vs %.6g", mean, ref)};
}

SelfTestCase config_round_trip() {
  Config cfg;
  cfg.set("t-min", "0.5");
  cfg.set("z", "1, 2,3");
  const auto z = cfg.get_list("z");
  bool rejected = false;
  try {
    cfg.set("no_such_key", "1");
  } catch (const UsageError&) {
    rejected = true;
  }
  const bool ok = cfg.get_double("t_min", 0.0) == 0.5 && z.size() == 3 && z[2] == 3.0 && rejected;
  return {"", ok, ""};
}

}  // namespace

std::vector<SelfTestCase> run_selftest() {
  const std::vector<std::pair<std::string, Check>> checks{
      {"mittag_leffler_half", mittag_leffler_half},
      {"stable_half_density", stable_half_density},
      {"subordinator_cdf_half", subordinator_cdf_half},
      {"on_diagonal_value", on_diagonal_value},
      {"fourier_agrees_off_diagonal", fourier_agrees_off_diagonal},
      {"mass_conserved", mass_conserved},
      {"scale_closed_forms", scale_closed_forms},
      {"exponent_structure", exponent_structure},
      {"estimate_regimes", estimate_regimes},
      {"sampler_mean_of_inverse", sampler_mean_of_inverse},
      {"config_round_trip", config_round_trip},
  };
  std::vector<SelfTestCase> out;
  for (const auto& [name, check] : checks) out.push_back(run_one(name, check));
  return out;
}

}  // namespace fracheat
