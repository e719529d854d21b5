#include <doctest.h>

#include <cmath>
#include <numbers>

#include "special.hpp"
#include "support.hpp"

using namespace fracheat;
using testing::rel;

TEST_CASE("reciprocal gamma vanishes at the poles and inverts tgamma elsewhere") {
  for (double x : {0.0, -1.0, -2.0, -7.0}) CHECK(special::reciprocal_gamma(x) == 0.0);
  for (double x : {0.25, 0.5, 1.5, 3.0, 7.5, -0.5, -2.5}) {
    CHECK(rel(special::reciprocal_gamma(x), 1.0 / std::tgamma(x)) < 1e-14);
  }
}

TEST_CASE("Mittag-Leffler special values") {
  CHECK(special::mittag_leffler(0.5, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(special::mittag_leffler(0.3, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(special::mittag_leffler(0.5, 1.0) - std::exp(1.0) * std::erfc(1.0)) < 1e-12);
  CHECK(std::abs(special::mittag_leffler(0.5, 1.0) - 0.427584) < 5e-7);
  // e^{10^4} erfc(100) from its continued-fraction asymptotics.
  const double x = 100.0;
  double cf = 0.0;
  for (int k = 60; k >= 1; --k) cf = (k / 2.0) / (x + cf);
  const double ref = 1.0 / (std::sqrt(std::numbers::pi) * (x + cf));
  CHECK(rel(special::mittag_leffler(0.5, 100.0), ref) < 1e-12);
}

TEST_CASE("Mittag-Leffler at beta 1/2 against the erfc identity") {
  for (double x = 0.0; x <= 50.0; x += 0.37) {
    const long double lx = x;
    const double ref = static_cast<double>(std::exp(lx * lx) * std::erfc(lx));
    CHECK(std::abs(special::mittag_leffler(0.5, x) - ref) < 1e-9);
  }
}

TEST_CASE("Mittag-Leffler branches agree at the switchover radii") {
  using special::MittagLefflerBranch;
  for (double beta : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const double r1 = special::kMittagLefflerSeriesRadius;
    const double r2 = special::kMittagLefflerAsymptoticRadius;
    CHECK(std::abs(special::mittag_leffler_branch(beta, r1, MittagLefflerBranch::Series) -
                   special::mittag_leffler_branch(beta, r1, MittagLefflerBranch::Integral)) < 1e-10);
    CHECK(std::abs(special::mittag_leffler_branch(beta, r2, MittagLefflerBranch::Integral) -
                   special::mittag_leffler_branch(beta, r2, MittagLefflerBranch::Asymptotic)) < 1e-10);
  }
}

TEST_CASE("property: E_beta(-x) is completely monotone, so decreasing and in (0,1]") {
  testing::Draws draws(11);
  for (int i = 0; i < 200; ++i) {
    const double beta = draws.uniform(0.05, 0.95);
    const double x = draws.log_uniform(1e-3, 1e3);
    const double e = special::mittag_leffler(beta, x);
    CHECK(e > 0.0);
    CHECK(e <= 1.0);
    CHECK(special::mittag_leffler(beta, 1.1 * x) <= e);
  }
}

TEST_CASE("Wynn epsilon accelerates the alternating harmonic series") {
  std::vector<double> partial;
  double s = 0.0;
  for (int k = 1; k <= 20; ++k) {
    s += (k % 2 ? 1.0 : -1.0) / k;
    partial.push_back(s);
  }
  double change = 0.0;
  const double v = special::wynn_epsilon(partial, change);
  CHECK(std::abs(v - std::log(2.0)) < 1e-12);
  CHECK(change < 1e-10);
}
