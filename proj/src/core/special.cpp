#include "special.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "error.hpp"
#include "quadrature.hpp"

namespace fracheat::special {
namespace {

constexpr double kPi = std::numbers::pi;

void check_ml_args(double beta, double x) {
  if (!(beta > 0.0 && beta < 1.0)) throw DomainError("Mittag-Leffler order must lie in (0,1)");
  if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("Mittag-Leffler argument must be finite and >= 0");
}

double ml_series(double beta, double x) {
  double sum = 0.0;
  double power = 1.0;  // (-x)^k
  for (int k = 0; k < 2000; ++k) {
    const double term = power * reciprocal_gamma(1.0 + beta * k);
    sum += term;
    if (k > 2 && std::abs(term) < 1e-18 * std::max(1.0, std::abs(sum))) break;
    power *= -x;
  }
  return sum;
}

double ml_integral(double beta, double x) {
  const double c = std::cos(beta * kPi);
  const double s = std::sin(beta * kPi);
  const double inv_beta = 1.0 / beta;
  // exp(-v^{1/beta}) is below 1e-340 past this point.
  const double v_max = std::pow(800.0, beta);
  auto f = [=](double v) {
    const double damp = std::exp(-std::pow(v, inv_beta));
    return damp * x / (v * v + 2.0 * x * v * c + x * x);
  };
  std::vector<double> interior{1.0, x};
  if (c < 0.0) {
    // Lorentzian peak at v = -x cos(beta pi) with half-width x sin(beta pi).
    const double v0 = -x * c;
    const double w = x * s;
    interior.insert(interior.end(), {v0 - 4.0 * w, v0 - w, v0, v0 + w, v0 + 4.0 * w});
  }
  const auto pts = quad::breakpoints(0.0, v_max, interior);
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-13;
  cfg.abs_floor = 1e-300;
  cfg.max_subdivisions = 4000;
  const double integral = quad::integrate_checked(f, pts, cfg, "Mittag-Leffler integral");
  return s / (beta * kPi) * integral;
}

double ml_asymptotic(double beta, double x) {
  double sum = 0.0;
  double power = 1.0 / x;  // x^{-k}
  double smallest = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 400; ++k) {
    const double term = ((k % 2 == 1) ? 1.0 : -1.0) * power * reciprocal_gamma(1.0 - beta * k);
    const double mag = std::abs(term);
    if (mag != 0.0) {
      // Divergent series: stop at the smallest term.
      if (mag > smallest) break;
      smallest = mag;
      sum += term;
      if (mag < 1e-18 * std::abs(sum)) break;
    }
    power /= x;
    if (power == 0.0) break;
  }
  return sum;
}

double wynn_core(const std::vector<double>& s) {
  const std::size_t n = s.size();
  if (n == 0) return 0.0;
  std::vector<double> prev(n + 1, 0.0);
  std::vector<double> cur(s.begin(), s.end());
  double best = s.back();
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<double> next(cur.size() - 1);
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      const double diff = cur[i + 1] - cur[i];
      if (diff == 0.0 || !std::isfinite(diff)) return best;
      next[i] = prev[i + 1] + 1.0 / diff;
    }
    if (k % 2 == 0) {
      if (!std::isfinite(next.back())) return best;
      best = next.back();
    }
    prev = std::move(cur);
    cur = std::move(next);
  }
  return best;
}

}  // namespace

double reciprocal_gamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) return 0.0;
  const double g = std::tgamma(x);
  if (std::isinf(g)) return 0.0;
  return 1.0 / g;
}

double mittag_leffler_branch(double beta, double x, MittagLefflerBranch branch) {
  check_ml_args(beta, x);
  switch (branch) {
    case MittagLefflerBranch::Series:
      return ml_series(beta, x);
    case MittagLefflerBranch::Integral:
      if (x == 0.0) return 1.0;
      return ml_integral(beta, x);
    case MittagLefflerBranch::Asymptotic:
      if (x == 0.0) throw DomainError("asymptotic Mittag-Leffler branch needs x > 0");
      return ml_asymptotic(beta, x);
  }
  return 0.0;
}

double mittag_leffler(double beta, double x) {
  check_ml_args(beta, x);
  if (x <= kMittagLefflerSeriesRadius) return ml_series(beta, x);
  if (x < kMittagLefflerAsymptoticRadius) return ml_integral(beta, x);
  return ml_asymptotic(beta, x);
}

double wynn_epsilon(const std::vector<double>& partial_sums, double& change) {
  const double full = wynn_core(partial_sums);
  if (partial_sums.size() < 3) {
    change = std::numeric_limits<double>::infinity();
    return full;
  }
  std::vector<double> shorter(partial_sums.begin(), partial_sums.end() - 1);
  change = std::abs(full - wynn_core(shorter));
  return full;
}

}  // namespace fracheat::special
