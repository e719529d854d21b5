#include <doctest.h>

#include <cmath>

#include "error.hpp"
#include "estimates.hpp"
#include "support.hpp"

using namespace fracheat;
using testing::rel;

namespace {

EstimateModel power_model(double d, double alpha, Flavor flavor, double beta = 0.5) {
  return {LaplaceExponent::stable(beta), SpaceTimeScale::power(alpha), VolumeFunction::power(d), flavor};
}

}  // namespace

TEST_CASE("regime classification uses an inclusive boundary") {
  const auto m = power_model(1.0, 2.0, Flavor::Diffusion);
  const auto a = classify(m, 1.0, 1.0);
  CHECK(a.regime == Regime::NearDiagonal);
  CHECK(a.rho == doctest::Approx(1.0));
  const auto b = classify(m, 1.0, 2.0);
  CHECK(b.regime == Regime::OffDiagonal);
  CHECK(b.rho == doctest::Approx(4.0));
  CHECK(classify(m, 16.0, 2.0).regime == Regime::NearDiagonal);
  CHECK(std::string(regime_name(Regime::NearDiagonal)) == "near");
  CHECK(std::string(regime_name(Regime::OffDiagonal)) == "off");
}

TEST_CASE("near-diagonal integral closed forms") {
  CHECK(rel(near_diagonal_integral(power_model(1.0, 2.0, Flavor::Jump), 1.0, 0.0), 2.0 * std::sqrt(2.0)) < 1e-14);
  // d = alpha = 1, phi(1/t) = 1, Phi(z) phi = 0.02.
  CHECK(rel(near_diagonal_integral(power_model(1.0, 1.0, Flavor::Jump), 1.0, 0.02), std::log(100.0)) < 1e-14);
  CHECK_THROWS_AS(near_diagonal_integral(power_model(1.0, 1.0, Flavor::Jump), 1.0, 2.0), DomainError);
  CHECK_THROWS_AS(near_diagonal_integral(power_model(1.0, 1.0, Flavor::Jump), 1.0, 0.0), DomainError);
}

TEST_CASE("property: closed form and quadrature routes of the near-diagonal integral agree") {
  testing::Draws draws(6);
  for (int i = 0; i < 60; ++i) {
    const double d = draws.uniform(0.5, 3.0), alpha = draws.uniform(0.5, 3.0);
    const auto m = power_model(d, alpha, Flavor::Jump, draws.uniform(0.1, 0.9));
    const double t = draws.log_uniform(1e-3, 1e3);
    const double rho = draws.log_uniform(1e-4, 1.0);
    const double z = m.scale.inverse(rho / m.exponent.value(1.0 / t));
    CHECK(rel(near_diagonal_integral(m, t, z), near_diagonal_integral_quadrature(m, t, z)) < 1e-8);
  }
}

TEST_CASE("estimate off the diagonal") {
  const auto jump = estimate(power_model(1.0, 1.0, Flavor::Jump), 1.0, 10.0);
  CHECK(jump.tag.regime == Regime::OffDiagonal);
  CHECK(rel(jump.value, 0.01) < 1e-14);
  CHECK_FALSE(jump.n.has_value());
  const auto diff = estimate(power_model(1.0, 2.0, Flavor::Diffusion), 1.0, 4.0);
  CHECK(rel(diff.value, 1.0) < 1e-14);
  REQUIRE(diff.n.has_value());
  CHECK(rel(*diff.n, std::pow(4.0, 4.0 / 3.0)) < 1e-12);
  const auto on = estimate(power_model(1.0, 2.0, Flavor::Jump), 1.0, 0.0);
  CHECK(rel(on.value, 2.0 * std::sqrt(2.0)) < 1e-14);
}

TEST_CASE("jump estimate stays bounded across the regime boundary") {
  const auto m = power_model(1.0, 1.0, Flavor::Jump);
  for (double t : {0.01, 1.0, 100.0}) {
    const double z1 = m.scale.inverse(1.0 / m.exponent.value(1.0 / t));
    const double below = estimate(m, t, z1 * (1 - 1e-6)).value;
    const double above = estimate(m, t, z1 * (1 + 1e-6)).value;
    CHECK(below / above > 0.1);
    CHECK(below / above < 10.0);
  }
}

TEST_CASE("explicit power-law estimates") {
  CHECK(rel(dset_estimate(0.5, 2.0, 1.0, true, 1.0, 0.0).value, 1.0) < 1e-14);
  const auto local = dset_estimate(0.5, 2.0, 1.0, true, 1.0, 2.0);
  REQUIRE(local.n.has_value());
  CHECK(rel(*local.n, std::pow(2.0, 4.0 / 3.0)) < 1e-12);
  CHECK(rel(dset_estimate(0.5, 1.0, 1.0, false, 1.0, 10.0).value, 0.01) < 1e-14);
  CHECK(rel(h_off_jump(0.5, 1.0, 1.0, 1.0, 10.0), 0.01) < 1e-14);
  CHECK(rel(h_near(0.5, 2.0, 1.0, 16.0, 0.0), 0.5) < 1e-14);
  CHECK(rel(h_off_local(0.5, 2.0, 1.0, 1.0, 2.0), std::exp(-std::pow(2.0, 4.0 / 3.0))) < 1e-14);
}

TEST_CASE("property: general and power-law estimates differ by a fixed factor") {
  const auto m = power_model(1.0, 1.0, Flavor::Jump);
  double lo = 1e300, hi = 0.0;
  for (double t : testing::logspace(1e-3, 1e3, 7)) {
    for (double z : testing::logspace(1e-3, 1e3, 7)) {
      const auto e = estimate(m, t, z);
      const auto p = dset_estimate(0.5, 1.0, 1.0, false, t, z);
      if (e.tag.regime != Regime::OffDiagonal) continue;
      lo = std::min(lo, e.value / p.value);
      hi = std::max(hi, e.value / p.value);
    }
  }
  CHECK(hi / lo - 1.0 < 1e-9);
}

TEST_CASE("profile cases") {
  const EstimateModel sub{LaplaceExponent::stable(0.5), SpaceTimeScale::power(2.0), VolumeFunction::power(1.0),
                          Flavor::Jump};
  const auto a = profile_case_estimate(sub, 4.0, 0.1);
  CHECK(a.which == ProfileCase::SubCritical);
  CHECK(rel(a.value, std::sqrt(0.5)) < 1e-14);
  const EstimateModel super{LaplaceExponent::stable(0.5), SpaceTimeScale::power(2.0), VolumeFunction::power(3.0),
                            Flavor::Jump};
  const auto b = profile_case_estimate(super, 1.0, 0.5);
  CHECK(b.which == ProfileCase::SuperCritical);
  CHECK(rel(b.value, 2.0) < 1e-14);
  const auto c = profile_case_estimate(power_model(1.0, 1.0, Flavor::Jump), 1.0, 0.1);
  CHECK(c.which == ProfileCase::Critical);
  CHECK(rel(c.value, std::log(20.0)) < 1e-14);
  CHECK_THROWS_AS(profile_case_estimate(sub, 1.0, 5.0), DomainError);
  const EstimateModel none{LaplaceExponent::stable(0.5), SpaceTimeScale::piecewise(1.5, 2.5, 1.0),
                           VolumeFunction::power(2.0), Flavor::Jump};
  CHECK(profile_case_estimate(none, 1.0, 0.5).which == ProfileCase::NotApplicable);
}

TEST_CASE("property: profile cases agree with the near-diagonal integral up to a bounded ratio") {
  const EstimateModel sub{LaplaceExponent::stable(0.5), SpaceTimeScale::power(2.0), VolumeFunction::power(1.0),
                          Flavor::Jump};
  double lo = 1e300, hi = 0.0;
  for (double t : testing::logspace(1e-3, 1e3, 7)) {
    for (double rho : testing::logspace(1e-6, 1.0, 7)) {
      const double z = sub.scale.inverse(rho / sub.exponent.value(1.0 / t));
      const double r = profile_case_estimate(sub, t, z).value / near_diagonal_integral(sub, t, z);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
  }
  CHECK(std::isfinite(hi / lo));
  CHECK(hi / lo < 10.0);
}

TEST_CASE("diffusion models need alpha_1 above 1 and beta_2") {
  CHECK_THROWS_AS(power_model(1.0, 1.0, Flavor::Diffusion).validate(), DomainError);
  CHECK_NOTHROW(power_model(1.0, 2.0, Flavor::Diffusion).validate());
}
