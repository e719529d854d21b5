#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bernstein.hpp"
#include "error.hpp"
#include "support.hpp"

using namespace fracheat;
using testing::rel;

TEST_CASE("stable and mixture values and derivatives") {
  const auto s = LaplaceExponent::stable(0.5);
  CHECK(s.value(4.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(s.value(1.0) == 1.0);
  CHECK(s.derivative(4.0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(s.derivative(1.0) == doctest::Approx(0.5).epsilon(1e-15));
  const auto m = LaplaceExponent::mixture({{1.0, 0.3}, {1.0, 0.7}});
  CHECK(m.value(1.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(m.derivative(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(m.beta_lo() == 0.3);
  CHECK(m.beta_hi() == 0.7);
}

TEST_CASE("inverses of phi, phi' and bar phi") {
  const auto s = LaplaceExponent::stable(0.5);
  CHECK(rel(s.inverse(2.0), 4.0) < 1e-12);
  CHECK(rel(s.derivative_inverse(0.25), 4.0) < 1e-12);
  CHECK(rel(s.bar_phi(2.0, 4.0), 8.0) < 1e-14);
  CHECK(rel(s.bar_phi_inverse(2.0, 8.0), 4.0) < 1e-12);
  CHECK_THROWS_AS(s.bar_phi(0.4, 1.0), DomainError);
}

TEST_CASE("Levy tail and its integral for the stable exponent") {
  const auto s = LaplaceExponent::stable(0.5);
  CHECK(rel(s.levy_tail(1.0), 1.0 / std::sqrt(std::numbers::pi)) < 1e-14);
  CHECK(rel(s.integrated_levy_tail(1.0), 2.0 / std::sqrt(std::numbers::pi)) < 1e-14);
  CHECK(s.integrated_levy_tail(0.0) == 0.0);
}

TEST_CASE("property: round trips of every inverse") {
  testing::Draws draws(3);
  for (int i = 0; i < 100; ++i) {
    const double b1 = draws.uniform(0.05, 0.95), b2 = draws.uniform(0.05, 0.95);
    const auto e = LaplaceExponent::mixture({{draws.log_uniform(0.1, 10.0), b1}, {draws.log_uniform(0.1, 10.0), b2}});
    const double l = draws.log_uniform(1e-6, 1e6);
    CHECK(rel(e.inverse(e.value(l)), l) < 1e-10);
    CHECK(rel(e.derivative_inverse(e.derivative(l)), l) < 1e-10);
    const double alpha = draws.uniform(1.0, 3.0);
    CHECK(rel(e.bar_phi_inverse(alpha, e.bar_phi(alpha, l)), l) < 1e-10);
  }
}

TEST_CASE("scaling report: C* = 1/beta for stable, bounded by the worst index for mixtures") {
  const auto lambdas = testing::logspace(1e-6, 1e6, 49);
  const std::vector<double> kappas{1.0, 3.0, 100.0};
  const auto s = check_scaling(LaplaceExponent::stable(0.5), lambdas, kappas);
  CHECK(s.pass);
  CHECK(s.c_star == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(s.min_slope_defect == doctest::Approx(0.5).epsilon(1e-12));
  const auto m = check_scaling(LaplaceExponent::mixture({{1.0, 0.3}, {1.0, 0.7}}), lambdas, kappas);
  CHECK(m.pass);
  CHECK(m.c_star <= 1.0 / 0.3 + 1e-12);
  CHECK(m.min_slope_defect >= -1e-9);
  CHECK_FALSE(check_scaling(LaplaceExponent::stable(0.5), {}, kappas).pass);
}

TEST_CASE("constructed exponent for Phi = r^2, alpha3 = 3 is 2 pi / sqrt(3) lambda^(2/3)") {
  const auto phi = cbf_from_scale(SpaceTimeScale::power(2.0), 3.0);
  for (double l : {1e-9, 1e-3, 1.0, 50.0, 1e8}) {
    CHECK(rel(phi.value(l), 2.0 * std::numbers::pi / std::sqrt(3.0) * std::pow(l, 2.0 / 3.0)) < 1e-9);
  }
  CHECK(phi.value(1e-12) < 1e-6);
  CHECK(complete_monotonicity_spot_check(phi, testing::logspace(1e-3, 1e3, 7)));
  double lo = 1e300, hi = 0.0;
  for (double r : testing::logspace(1e-4, 1e4, 65)) {
    const double v = r * r * phi.value(std::pow(r, -3.0));
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(hi / lo < 100.0);
  CHECK_THROWS_AS(cbf_from_scale(SpaceTimeScale::power(2.0), 1.5), DomainError);
}

TEST_CASE("constructed exponent with a piecewise scale keeps indices between 1/alpha3 bounds") {
  const auto phi = cbf_from_scale(SpaceTimeScale::piecewise(1.5, 2.5, 1.0), 3.0);
  const auto rep = check_scaling(phi, testing::logspace(1e-6, 1e6, 25), {1.0, 10.0});
  CHECK(rep.pass);
  CHECK(rep.fitted_beta_lo > 0.5 - 0.05);
  CHECK(rep.fitted_beta_hi < 2.5 / 3.0 + 0.05);
}

TEST_CASE("invalid exponents are rejected") {
  CHECK_THROWS_AS(LaplaceExponent::stable(1.0), DomainError);
  CHECK_THROWS_AS(LaplaceExponent::stable(0.0), DomainError);
  CHECK_THROWS_AS(LaplaceExponent::mixture({}), DomainError);
  CHECK_THROWS_AS(LaplaceExponent::mixture({{-1.0, 0.5}}), DomainError);
  CHECK_THROWS_AS(LaplaceExponent::stable(0.5).value(-1.0), DomainError);
}
