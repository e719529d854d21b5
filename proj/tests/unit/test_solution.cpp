#include <doctest.h>

#include <cmath>
#include <numbers>

#include "error.hpp"
#include "kernels.hpp"
#include "solution.hpp"
#include "subordinator.hpp"
#include "support.hpp"

using namespace fracheat;
using testing::rel;

namespace {

const double kOnDiagonal = std::tgamma(0.25) / (std::pow(4.0, 0.75) * std::numbers::pi);

}  // namespace

TEST_CASE("on-diagonal value at beta 1/2 and its time scaling") {
  const SubordinatorModel model(LaplaceExponent::stable(0.5));
  const auto g = SpatialKernel::gaussian(1);
  CHECK(rel(p_quadrature(g, model, 1.0, 0.0).value, kOnDiagonal) < 1e-12);
  CHECK(rel(p_quadrature(g, model, 16.0, 0.0).value, kOnDiagonal / 2.0) < 1e-12);
  CHECK(rel(p_fourier_oracle(0.5, 2.0, 1, 1.0, 0.0).value, kOnDiagonal) < 1e-10);
}

TEST_CASE("Monte Carlo agrees with quadrature within three standard errors") {
  const SubordinatorModel model(LaplaceExponent::stable(0.5));
  RngStream rng(1, 0);
  const auto g = SpatialKernel::gaussian(1);
  const auto mc = p_monte_carlo(g, model, 1.0, 0.0, 1000000, rng);
  CHECK(std::abs(mc.value - kOnDiagonal) < 3.0 * mc.error);
  const auto c = SpatialKernel::cauchy(1);
  RngStream rng2(1, 1);
  const auto mcc = p_monte_carlo(c, model, 1.0, 1.0, 1000000, rng2);
  CHECK(std::abs(mcc.value - p_quadrature(c, model, 1.0, 1.0).value) < 3.0 * mcc.error);
}

TEST_CASE("cross-method agreement over the (beta, alpha, t, z) grid") {
  for (double beta : {0.3, 0.5, 0.7}) {
    const SubordinatorModel model(LaplaceExponent::stable(beta));
    for (double alpha : {1.0, 2.0}) {
      const auto k = alpha == 2.0 ? SpatialKernel::gaussian(1) : SpatialKernel::cauchy(1);
      for (double t : {0.1, 1.0, 10.0}) {
        for (double z : {0.0, 1.0, 10.0}) {
          if (z == 0.0 && alpha == 1.0) {
            // The on-diagonal Cauchy integral diverges.
            CHECK_THROWS_AS(p_quadrature(k, model, t, z), DomainError);
            continue;
          }
          const double q = p_quadrature(k, model, t, z).value;
          const auto f = p_fourier_oracle(beta, alpha, 1, t, z);
          CHECK(f.converged);
          // The oracle carries an absolute error near 1e-14, which swamps deep tail values.
          if (f.value > 1e6 * f.error) {
            CHECK(rel(q, f.value) < 1e-8);
          } else {
            CHECK(std::abs(q - f.value) < 10.0 * f.error);
          }
          RngStream rng(2, static_cast<std::uint64_t>(100 * beta + 10 * alpha + t + z));
          const auto mc = p_monte_carlo(k, model, t, z, 20000, rng);
          CHECK(std::abs(mc.value - q) < 4.0 * mc.error);
        }
      }
    }
  }
}

TEST_CASE("beta near one approaches the heat kernel") {
  const auto f = p_fourier_oracle(0.999, 2.0, 1, 1.0, 0.0);
  CHECK(rel(f.value, 1.0 / std::sqrt(4.0 * std::numbers::pi)) < 0.01);
  const SubordinatorModel model(LaplaceExponent::stable(0.999));
  const auto g = SpatialKernel::gaussian(1);
  for (double z : {0.5, 1.0, 2.0}) CHECK(rel(p_quadrature(g, model, 1.0, z).value, g(1.0, z)) < 0.01);
}

TEST_CASE("property: p is positive and non-increasing in z") {
  testing::Draws draws(12);
  const std::vector<SpatialKernel> kernels{
      SpatialKernel::gaussian(1), SpatialKernel::cauchy(1), SpatialKernel::gaussian(2),
      SpatialKernel::jump(VolumeFunction::power(1.0), SpaceTimeScale::power(1.0))};
  // The (t, z) box keeps p above the double underflow threshold.
  for (int i = 0; i < 30; ++i) {
    const auto model = SubordinatorModel(LaplaceExponent::stable(draws.uniform(0.2, 0.9)));
    const auto& k = kernels[static_cast<std::size_t>(i) % kernels.size()];
    const double t = draws.log_uniform(1e-1, 1e2), z = draws.log_uniform(1e-2, 10.0);
    const double p = p_quadrature(k, model, t, z).value;
    CHECK(p > 0.0);
    CHECK(p_quadrature(k, model, t, 1.5 * z).value <= p);
  }
}

TEST_CASE("mass conservation for the exact kernels") {
  for (double beta : {0.3, 0.5}) {
    const SubordinatorModel model(LaplaceExponent::stable(beta));
    for (const auto& k : {SpatialKernel::gaussian(1), SpatialKernel::cauchy(1)}) {
      for (double t : {0.1, 1.0}) CHECK(mass_residual(k, model, t) < 1e-6);
    }
  }
}

TEST_CASE("mixture p: quadrature against Monte Carlo") {
  const SubordinatorModel mix(LaplaceExponent::mixture({{1.0, 0.4}, {1.0, 0.6}}));
  const auto g = SpatialKernel::gaussian(1);
  RngStream rng(4, 0);
  const auto mc = p_monte_carlo(g, mix, 1.0, 0.5, 20000, rng);
  const double q = p_quadrature(g, mix, 1.0, 0.5).value;
  CHECK(std::abs(mc.value - q) < 4.0 * mc.error + 2e-3 * q);
}

TEST_CASE("heat solution: semigroup route equals convolution route") {
  const GaussianBump f{};
  for (double t : {0.2, 1.0}) {
    for (double x : {0.0, 1.0, 3.0}) {
      CHECK(rel(heat_solution(0.5, f, t, x), heat_solution_by_convolution(0.5, f, t, x)) < 1e-8);
    }
  }
  CHECK(f(0.3) == doctest::Approx(std::exp(-0.09)));
  CHECK(f.heat(0.0, 0.7) == doctest::Approx(f(0.7)));
}

TEST_CASE("weak-form residual at a single time and the initial condition") {
  const GaussianBump f{}, g{};
  const auto rep = caputo_weak_residual(0.5, f, g, {1.0});
  REQUIRE(rep.rows.size() == 1);
  CHECK(rep.max_residual < 0.05);
  CHECK(rep.rows[0].richardson < 0.1);
  CHECK(rep.warnings.empty());
  CHECK(initial_condition_error(0.5, f, 1e-16) < 1e-6);
}

TEST_CASE("weak-form residual with disjoint supports is negligible on both sides") {
  const GaussianBump f{1.0, -5.0, 0.05}, g{1.0, 5.0, 0.05};
  const auto rep = caputo_weak_residual(0.5, f, g, {1e-3});
  REQUIRE(rep.rows.size() == 1);
  CHECK(std::abs(rep.rows[0].lhs) < 1e-8);
  CHECK(std::abs(rep.rows[0].rhs) < 1e-8);
}

TEST_CASE("domain checks") {
  const SubordinatorModel model(LaplaceExponent::stable(0.5));
  CHECK_THROWS_AS(p_quadrature(SpatialKernel::gaussian(1), model, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(p_quadrature(SpatialKernel::gaussian(3), model, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(p_fourier_oracle(0.5, 1.0, 1, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(p_fourier_oracle(0.5, 2.0, 2, 1.0, 1.0), UnsupportedModelError);
}
