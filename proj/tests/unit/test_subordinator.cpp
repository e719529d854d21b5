#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "error.hpp"
#include "quadrature.hpp"
#include "subordinator.hpp"
#include "support.hpp"

using namespace fracheat;
using testing::rel;

namespace {

double half_density(double x) {
  return std::pow(x, -1.5) * std::exp(-0.25 / x) / (2.0 * std::sqrt(std::numbers::pi));
}

}  // namespace

TEST_CASE("stable density at beta 1/2") {
  CHECK(rel(stable::density(0.5, 1.0), 0.219696) < 5e-6);
  CHECK(rel(stable::density(0.5, 0.25), 8.0 * std::exp(-1.0) / (2.0 * std::sqrt(std::numbers::pi))) < 1e-12);
  for (double x : testing::logspace(0.05, 50.0, 50)) CHECK(rel(stable::density(0.5, x), half_density(x)) < 1e-8);
  for (double x : testing::logspace(1e-3, 1e8, 23)) {
    CHECK(rel(stable::log_density(0.5, x), std::log(half_density(x))) < 1e-11);
    CHECK(std::abs(stable::cdf(0.5, x) - std::erfc(0.5 / std::sqrt(x))) < 1e-13);
  }
}

TEST_CASE("property: stable density integrates to the cdf and total mass one") {
  const QuadratureConfig cfg;
  const double inf = std::numeric_limits<double>::infinity();
  for (double beta : {0.1, 0.3, 0.6, 0.9, 0.99}) {
    auto g = [&](double x) { return stable::density(beta, x); };
    CHECK(std::abs(quad::integrate(g, {0.0, 0.1, 1.0, 10.0, inf}, cfg).value - 1.0) < 1e-8);
    for (double x : {0.3, 1.0, 4.0}) {
      CHECK(std::abs(quad::integrate(g, 0.0, x, cfg).value - stable::cdf(beta, x)) < 1e-9);
    }
  }
}

TEST_CASE("property: Laplace transform of the stable density is exp(-lambda^beta)") {
  const QuadratureConfig cfg;
  const double inf = std::numeric_limits<double>::infinity();
  testing::Draws draws(21);
  for (int i = 0; i < 12; ++i) {
    const double beta = draws.uniform(0.2, 0.9), lambda = draws.log_uniform(0.05, 20.0);
    auto f = [&](double x) { return std::exp(-lambda * x) * stable::density(beta, x); };
    const double lt = quad::integrate(f, {0.0, 0.1, 1.0, 10.0, inf}, cfg).value;
    CHECK(rel(lt, std::exp(-std::pow(lambda, beta))) < 1e-8);
  }
}

TEST_CASE("large-x tail series joins the integral representation") {
  for (double beta : {0.3, 0.5, 0.7, 0.9}) {
    // The series is used once beta log x >= 6.9.
    const double x = std::exp(6.9 / beta);
    CHECK(rel(stable::density(beta, x * (1 - 1e-9)), stable::density(beta, x * (1 + 1e-9))) < 1e-8);
    CHECK(rel(stable::survival(beta, x * (1 - 1e-9)), stable::survival(beta, x * (1 + 1e-9))) < 1e-8);
  }
  CHECK(rel(stable::survival(0.5, 1e12), std::erf(0.5 / std::sqrt(1e12))) < 1e-12);
}

TEST_CASE("inverse density at beta 1/2 is half-Gaussian") {
  const SubordinatorModel model(LaplaceExponent::stable(0.5));
  CHECK(rel(model.density_E(1.0, 1e-12), 1.0 / std::sqrt(std::numbers::pi)) < 1e-6);
  CHECK(rel(model.density_E(1.0, 2.0), std::exp(-1.0) / std::sqrt(std::numbers::pi)) < 1e-10);
  for (double t : {0.1, 3.0}) {
    for (double r : {0.1, 1.0, 5.0}) {
      CHECK(rel(model.density_E(t, r), std::exp(-r * r / (4.0 * t)) / std::sqrt(std::numbers::pi * t)) < 1e-10);
    }
  }
}

TEST_CASE("cdf of S_r at beta 1/2") {
  const SubordinatorModel model(LaplaceExponent::stable(0.5));
  CHECK(std::abs(model.cdf(2.0, 4.0) - 0.479500) < 1e-6);
  CHECK(std::abs(model.cdf(1.0, 1.0) - 0.479500) < 1e-6);
  CHECK(model.cdf(1.0, 1e30) == doctest::Approx(1.0));
  for (double r : testing::logspace(1e-2, 1e2, 9)) {
    for (double t : testing::logspace(1e-2, 1e2, 9)) {
      CHECK(std::abs(model.cdf(r, t) - std::erfc(r / (2.0 * std::sqrt(t)))) < 1e-10);
      CHECK(std::abs(model.cdf(r, t) + model.survival(r, t) - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("mixture law: equal indices reduce to a rescaled stable law") {
  const SubordinatorModel mix(LaplaceExponent::mixture({{1.0, 0.5}, {1.0, 0.5}}));
  for (double r : {0.1, 1.0, 3.0}) {
    for (double t : {0.05, 1.0, 20.0}) {
      CHECK(std::abs(mix.cdf(r, t) - std::erfc(r / std::sqrt(t))) < 1e-8);
    }
  }
}

TEST_CASE("property: mixture cdf has the mixture Laplace transform") {
  // lambda int e^{-lambda x} F(x) dx by the trapezoid rule in log x, which
  // converges geometrically for this integrand.
  const auto e = LaplaceExponent::mixture({{0.7, 0.3}, {1.3, 0.7}});
  const SubordinatorModel model(e);
  const double h = 0.1;
  for (double r : {0.5, 2.0}) {
    std::vector<double> ys, fs;
    for (double y = -5.0; y <= 5.5; y += h) {
      ys.push_back(y);
      fs.push_back(model.cdf(r, std::exp(y)));
    }
    for (double lambda : {0.3, 1.0, 4.0}) {
      double lt = 0.0;
      for (std::size_t i = 0; i < ys.size(); ++i) {
        const double x = std::exp(ys[i]);
        lt += h * lambda * x * std::exp(-lambda * x) * fs[i];
      }
      CHECK(rel(lt, std::exp(-r * e.value(lambda))) < 1e-6);
    }
  }
}

TEST_CASE("sampling is deterministic and matches the laws") {
  const SubordinatorModel model(LaplaceExponent::stable(0.5));
  RngStream a(5, 1), b(5, 1);
  for (int i = 0; i < 50; ++i) CHECK(model.sample_S(1.0, a) == model.sample_S(1.0, b));

  RngStream rng(17, 0);
  std::vector<double> x(100000);
  for (double& v : x) v = model.sample_S(1.0, rng);
  std::sort(x.begin(), x.end());
  const KsBounds ks = ks_distance_bounds(x, [](double v) { return std::erfc(0.5 / std::sqrt(v)); }, 25);
  CHECK(ks.lower <= ks.upper);
  CHECK(ks.upper < 0.01);

  // E_1 at beta 1/2 is half-Gaussian with mean 2/sqrt(pi).
  double sum = 0.0, sum2 = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double e = model.sample_E(1.0, rng);
    sum += e;
    sum2 += e * e;
  }
  const double mean = sum / n, se = std::sqrt((sum2 / n - mean * mean) / n);
  CHECK(std::abs(mean - 2.0 / std::sqrt(std::numbers::pi)) < 3.0 * se);
}

TEST_CASE("KS bounds bracket the exact distance") {
  std::vector<double> x;
  for (int i = 0; i < 1000; ++i) x.push_back((i + 0.3) / 1000.0);
  auto F = [](double v) { return v * v; };
  double exact = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    exact = std::max({exact, (i + 1.0) / 1000.0 - F(x[i]), F(x[i]) - i / 1000.0});
  }
  for (std::size_t stride : {1u, 7u, 25u, 200u}) {
    const KsBounds ks = ks_distance_bounds(x, F, stride);
    CHECK(ks.lower <= exact + 1e-15);
    CHECK(ks.upper >= exact - 1e-15);
    if (stride == 1) CHECK(ks.upper == doctest::Approx(exact).epsilon(1e-14));
  }
  CHECK_THROWS_AS(ks_distance_bounds({}, F, 1), DomainError);
}

TEST_CASE("path sampler agrees with the exact inverse law") {
  const SubordinatorModel model(LaplaceExponent::stable(0.5));
  RngStream rng(3, 0);
  double sum = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) sum += model.sample_E_path(1.0, rng, 1e-2);
  CHECK(std::abs(sum / n - 2.0 / std::sqrt(std::numbers::pi)) < 0.03);
}

TEST_CASE("renewal identity and tail bounds") {
  const SubordinatorModel model(LaplaceExponent::stable(0.5));
  for (double t : {1e-4, 1.0, 2.0}) {
    const auto rep = time_identities(model, t);
    CHECK(rep.renewal_residual < 1e-4);
    for (double r : rep.first_identity_residuals) CHECK(r < 1e-4);
  }
  std::vector<GridPoint> grid;
  for (double r : testing::logspace(1e-2, 1e2, 13)) {
    for (double t : testing::logspace(1e-2, 1e2, 13)) grid.push_back({r, t});
  }
  const TailBoundsReport rep = subordinator_tail_bounds(model, grid);
  CHECK(rep.pass);
  CHECK(rep.c_upper_second >= 0.2);

  const SubordinatorModel mix(LaplaceExponent::mixture({{1.0, 0.3}, {1.0, 0.7}}));
  std::vector<GridPoint> coarse;
  for (double r : testing::logspace(1e-2, 1e2, 7)) {
    for (double t : testing::logspace(1e-2, 1e2, 7)) coarse.push_back({r, t});
  }
  CHECK(subordinator_tail_bounds(mix, coarse).pass);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(stable::density(1.2, 1.0), DomainError);
  const SubordinatorModel model(LaplaceExponent::stable(0.5));
  CHECK_THROWS_AS(model.cdf(-1.0, 1.0), DomainError);
  CHECK_THROWS_AS(SubordinatorModel(cbf_from_scale(SpaceTimeScale::power(2.0), 3.0)).cdf(1.0, 1.0),
                  UnsupportedModelError);
}
