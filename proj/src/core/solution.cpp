#include "solution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <unordered_map>

#include "error.hpp"
#include "special.hpp"

namespace fracheat {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Below this log-time the density of E_t is replaced by its limit w(t) s.
constexpr double kLowerCut = -40.0;
constexpr double kUpperCut = 40.0;

// Density of Y = log(E_t phi(1/t)) with respect to dy. For a single stable
// component Y = log E_1 does not depend on t. Values are memoised: adaptive
// quadrature over fixed panels revisits the same nodes in nested integrals.
class LogTimeDensity {
 public:
  LogTimeDensity(const SubordinatorModel& model, double t) : model_(model), t_(t) {
    const auto& comps = model.exponent().components();
    if (model.exponent().kind() == ExponentKind::ConstructedCBF || comps.empty()) {
      throw UnsupportedModelError("the law of E_t is only available for stable and mixture exponents");
    }
    phi1_ = model.exponent().value(1.0 / t);
    single_ = comps.size() == 1;
    beta_ = comps.front().beta;
    // Small-s limit of the density of E_t: P(E_t <= s) ~ s w(t).
    small_slope_ = model.exponent().levy_tail(t) / phi1_;
  }

  double phi1() const noexcept { return phi1_; }

  double operator()(double y) const {
    if (y > kUpperCut) return 0.0;
    if (y < kLowerCut) return small_slope_ * std::exp(y);
    const auto it = memo_.find(y);
    if (it != memo_.end()) return it->second;
    double v;
    if (single_) {
      v = std::exp(stable::log_inverse_density(beta_, std::exp(y)) + y);
    } else {
      const double s = std::exp(y) / phi1_;
      // Finite differences of the survival function can dip just below zero in the far tail.
      v = std::max(0.0, model_.density_E(t_, s) * s);
    }
    memo_.emplace(y, v);
    return v;
  }

  static const std::vector<double>& panels() {
    static const std::vector<double> p{-kInf, kLowerCut, -30.0, -20.0, -12.0, -8.0, -6.0, -4.0, -3.0, -2.0,
                                       -1.0,  0.0,       std::numbers::ln2, 1.0, 1.5, 2.0, 2.5, 3.0, kInf};
    return p;
  }

  std::vector<double> panels_with(std::vector<double> extra) const {
    std::vector<double> inner(panels().begin() + 1, panels().end() - 1);
    for (double e : extra) {
      if (std::isfinite(e) && e < kUpperCut) inner.push_back(e);
    }
    auto pts = quad::breakpoints(-kInf, kInf, inner);
    return pts;
  }

 private:
  const SubordinatorModel& model_;
  double t_;
  double phi1_ = 1.0;
  bool single_ = true;
  double beta_ = 0.5;
  double small_slope_ = 0.0;
  mutable std::unordered_map<double, double> memo_;
};

void check_tz(double t, double z) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("solution needs finite t > 0");
  if (!(z >= 0.0) || !std::isfinite(z)) throw DomainError("solution needs finite z >= 0");
}

void check_diagonal(const SpatialKernel& kernel, double z) {
  if (z == 0.0 && kernel.small_time_diagonal_exponent() >= 1.0) {
    throw DomainError("p(t, 0) is infinite for " + kernel.describe() + ": q(s, 0) is not integrable at s = 0");
  }
}

quad::QuadResult p_integral(const SpatialKernel& kernel, const LogTimeDensity& density, double z,
                            const QuadratureConfig& cfg) {
  const double phi1 = density.phi1();
  auto f = [&](double y) {
    const double h = density(y);
    if (h == 0.0) return 0.0;
    const double s = std::exp(y) / phi1;
    if (!(s > 0.0) || !std::isfinite(s)) return 0.0;
    return std::exp(kernel.log_eval(s, z) + std::log(h));
  };
  std::vector<double> extra;
  if (z > 0.0) extra.push_back(std::log(kernel.scale()(z) * phi1));
  const auto pts = density.panels_with(extra);
  return quad::integrate(f, pts, cfg);
}

SolutionEstimate to_estimate(const quad::QuadResult& r, SolutionMethod m) {
  SolutionEstimate e;
  e.value = r.value < 0.0 ? 0.0 : r.value;
  e.error = r.abs_error;
  e.method = m;
  e.converged = r.converged && std::isfinite(r.value);
  return e;
}

std::vector<double> simpson_weights(const WeakResidualGrid& grid) {
  if (grid.points < 3 || grid.points % 2 == 0) throw DomainError("Simpson grid needs an odd number of points >= 3");
  if (!(grid.x_hi > grid.x_lo)) throw DomainError("grid needs x_hi > x_lo");
  const int n = grid.points;
  const double h = (grid.x_hi - grid.x_lo) / (n - 1);
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double c = (i == 0 || i == n - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    w[static_cast<std::size_t>(i)] = c * h / 3.0;
  }
  return w;
}

double grid_x(const WeakResidualGrid& grid, int i) {
  return grid.x_lo + (grid.x_hi - grid.x_lo) * i / (grid.points - 1);
}

// T_r f(x) - f(x) without cancellation for small r.
double heat_increment(const GaussianBump& f, double r, double x) {
  const double d2 = (x - f.center) * (x - f.center);
  const double v = f.variance;
  const double expo = -0.5 * std::log1p(2.0 * r / v) + d2 * r / (v * (v + 2.0 * r));
  if (expo > 1.0) return f.heat(r, x) - f(x);
  return f(x) * std::expm1(expo);
}

// E[F(E_s)] under Stable(beta) through E_s = s^beta E_1.
double stable_expectation(const LogTimeDensity& density, double beta, double s, const std::function<double(double)>& F,
                          const QuadratureConfig& cfg, std::string_view what) {
  if (s == 0.0) return F(0.0);
  const double lambda = std::pow(s, beta);
  auto f = [&](double y) {
    const double h = density(y);
    if (h == 0.0) return 0.0;
    return F(lambda * std::exp(y)) * h;
  };
  return quad::integrate_checked(f, LogTimeDensity::panels(), cfg, what);
}

}  // namespace

const char* method_name(SolutionMethod method) {
  switch (method) {
    case SolutionMethod::Quadrature:
      return "quad";
    case SolutionMethod::MonteCarlo:
      return "mc";
    case SolutionMethod::Fourier:
      return "fourier";
  }
  return "?";
}

SolutionEstimate p_quadrature(const SpatialKernel& kernel, const SubordinatorModel& model, double t, double z,
                              const QuadratureConfig& cfg) {
  check_tz(t, z);
  cfg.validate();
  check_diagonal(kernel, z);
  const LogTimeDensity density(model, t);
  return to_estimate(p_integral(kernel, density, z, cfg), SolutionMethod::Quadrature);
}

SolutionEstimate p_monte_carlo(const SpatialKernel& kernel, const SubordinatorModel& model, double t, double z,
                               std::size_t n, RngStream& rng) {
  check_tz(t, z);
  if (n < 100) throw DomainError("Monte Carlo needs at least 100 samples");
  if (model.exponent().kind() == ExponentKind::ConstructedCBF) {
    throw UnsupportedModelError("Monte Carlo needs a stable or mixture exponent");
  }
  check_diagonal(kernel, z);
  long double sum = 0.0L, sum_sq = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = model.sample_E(t, rng);
    const double q = e > 0.0 ? kernel(e, z) : 0.0;
    sum += q;
    sum_sq += static_cast<long double>(q) * q;
  }
  const long double mean = sum / static_cast<long double>(n);
  const long double var = std::max(0.0L, (sum_sq / n - mean * mean) * n / (n - 1));
  SolutionEstimate out;
  out.value = static_cast<double>(mean);
  out.error = static_cast<double>(std::sqrt(var / n));
  out.method = SolutionMethod::MonteCarlo;
  return out;
}

SolutionEstimate p_fourier_oracle(double beta, double alpha, int d, double t, double z) {
  check_tz(t, z);
  if (d != 1) throw UnsupportedModelError("Fourier oracle is one-dimensional");
  if (alpha != 1.0 && alpha != 2.0) throw DomainError("Fourier oracle needs alpha in {1, 2}");
  if (!(beta > 0.0 && beta < 1.0)) throw DomainError("Fourier oracle needs beta in (0,1)");

  const double tb = std::pow(t, beta);
  auto symbol = [&](double xi) { return xi == 0.0 ? 1.0 : special::mittag_leffler(beta, std::pow(xi, alpha) * tb); };
  const double xi1 = std::pow(tb, -1.0 / alpha);
  std::vector<double> marks;
  for (int k = -4; k <= 40; ++k) marks.push_back(xi1 * std::ldexp(1.0, k));

  QuadratureConfig qc;
  qc.rel_tol = 1e-12;
  qc.abs_floor = 1e-300;
  qc.max_subdivisions = 4000;

  SolutionEstimate out;
  out.method = SolutionMethod::Fourier;

  if (z == 0.0) {
    if (alpha <= 1.0) throw DomainError("p(t, 0) is infinite for alpha <= d");
    const double x_asym = std::pow(special::kMittagLefflerAsymptoticRadius / tb, 1.0 / alpha);
    const auto pts = quad::breakpoints(0.0, x_asym, marks);
    const auto r = quad::integrate(symbol, pts, qc);
    // int_X^inf sum_k (-1)^{k+1} (xi^alpha t^beta)^{-k} / Gamma(1 - beta k) d xi, term by term.
    double tail = 0.0, smallest = kInf;
    for (int k = 1; k < 400; ++k) {
      const double term = ((k % 2 == 1) ? 1.0 : -1.0) * std::pow(tb, -k) * std::pow(x_asym, 1.0 - alpha * k) /
                          (alpha * k - 1.0) * special::reciprocal_gamma(1.0 - beta * k);
      const double mag = std::abs(term);
      if (mag == 0.0) continue;
      if (mag > smallest) break;
      smallest = mag;
      tail += term;
      if (mag < 1e-18 * std::abs(tail)) break;
    }
    out.value = std::max(0.0, (r.value + tail) / kPi);
    out.error = (r.abs_error + smallest) / kPi;
    out.converged = r.converged;
    return out;
  }

  auto f = [&](double xi) { return std::cos(xi * z) * symbol(xi); };
  const double half = kPi / z;
  std::vector<double> partial;
  double sum = 0.0, abs_sum = 0.0, quad_err = 0.0, est = 0.0, change = kInf;
  bool ok = true;
  for (int k = 0; k < 4000; ++k) {
    const double lo = k == 0 ? 0.0 : (k - 0.5) * half;
    const double hi = (k + 0.5) * half;
    const auto r = quad::integrate(f, quad::breakpoints(lo, hi, marks), qc);
    ok = ok && r.converged;
    sum += r.value;
    abs_sum += std::abs(r.value);
    quad_err += r.abs_error;
    partial.push_back(sum);
    if (partial.size() >= 12) {
      const std::size_t m = std::min<std::size_t>(partial.size(), 30);
      std::vector<double> tail(partial.end() - static_cast<std::ptrdiff_t>(m), partial.end());
      est = special::wynn_epsilon(tail, change);
      if (change <= std::max(1e-12 * std::abs(est), 1e-15 * abs_sum)) break;
    }
  }
  out.value = std::max(0.0, est / kPi);
  out.error = (quad_err + change) / kPi;
  out.converged = ok && change <= std::max(1e-9 * std::abs(est), 1e-13 * abs_sum);
  return out;
}

double mass_residual(const SpatialKernel& kernel, const SubordinatorModel& model, double t,
                     const QuadratureConfig& cfg) {
  if (!kernel.is_exact() || kernel.dimension() != 1) throw DomainError("mass check needs a 1-d exact kernel");
  if (!(t > 0.0)) throw DomainError("mass check needs t > 0");
  cfg.validate();
  const LogTimeDensity density(model, t);
  QuadratureConfig inner = cfg;
  inner.rel_tol = std::min(cfg.rel_tol, 1e-10);
  auto f = [&](double eta) {
    const double z = std::exp(eta);
    if (!(z > 0.0) || !std::isfinite(z)) return 0.0;
    const auto r = p_integral(kernel, density, z, inner);
    if (!r.converged) throw NonConvergenceError("p(t, z) inside the mass integral did not converge", r.value, r.abs_error);
    return 2.0 * r.value * z;
  };
  const double eta0 = std::log(kernel.scale().inverse(1.0 / density.phi1()));
  std::vector<double> interior;
  for (double o : {-30.0, -10.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 10.0}) interior.push_back(eta0 + o);
  const auto pts = quad::breakpoints(-kInf, kInf, interior);
  QuadratureConfig outer = cfg;
  outer.rel_tol = std::max(cfg.rel_tol, 1e-9);
  const double mass = quad::integrate_checked(f, pts, outer, "mass integral");
  return std::abs(mass - 1.0);
}

double GaussianBump::operator()(double x) const {
  const double d = x - center;
  return amplitude * std::exp(-d * d / (2.0 * variance));
}

double GaussianBump::second_derivative(double x) const {
  const double d = x - center;
  return (*this)(x) * (d * d / (variance * variance) - 1.0 / variance);
}

double GaussianBump::heat(double r, double x) const {
  const double v = variance + 2.0 * r;
  const double d = x - center;
  return amplitude * std::sqrt(variance / v) * std::exp(-d * d / (2.0 * v));
}

double heat_solution(double beta, const GaussianBump& f, double t, double x, const QuadratureConfig& cfg) {
  if (!(t > 0.0)) throw DomainError("heat_solution needs t > 0");
  const SubordinatorModel model(LaplaceExponent::stable(beta));
  const LogTimeDensity density(model, 1.0);
  const double inc = stable_expectation(
      density, beta, t, [&](double r) { return r > 0.0 ? heat_increment(f, r, x) : 0.0; }, cfg, "u(t, x)");
  return f(x) + inc;
}

double heat_solution_by_convolution(double beta, const GaussianBump& f, double t, double x,
                                    const QuadratureConfig& cfg) {
  if (!(t > 0.0)) throw DomainError("heat_solution needs t > 0");
  const SubordinatorModel model(LaplaceExponent::stable(beta));
  const LogTimeDensity density(model, t);
  const SpatialKernel kernel = SpatialKernel::gaussian(1);
  QuadratureConfig inner = cfg;
  inner.rel_tol = std::min(cfg.rel_tol, 1e-11);
  auto p = [&](double z) {
    const auto r = p_integral(kernel, density, z, inner);
    if (!r.converged) throw NonConvergenceError("p(t, z) inside the convolution did not converge", r.value, r.abs_error);
    return r.value;
  };
  auto f_int = [&](double y) { return p(std::abs(x - y)) * f(y); };
  const double sd = std::sqrt(f.variance);
  const double scale = std::pow(t, beta / 2.0);
  std::vector<double> interior{x, f.center};
  for (double k : {1.0, 3.0, 6.0}) {
    interior.insert(interior.end(), {x - k * scale, x + k * scale, f.center - k * sd, f.center + k * sd});
  }
  QuadratureConfig outer = cfg;
  outer.rel_tol = std::max(cfg.rel_tol, 1e-9);
  return quad::integrate_checked(f_int, quad::breakpoints(-kInf, kInf, interior), outer, "u(t, x) by convolution");
}

WeakResidualReport caputo_weak_residual(double beta, const GaussianBump& f, const GaussianBump& g,
                                        const std::vector<double>& t_grid, const WeakResidualGrid& grid,
                                        const QuadratureConfig& cfg) {
  if (!(beta > 0.0 && beta < 1.0)) throw DomainError("weak residual needs beta in (0,1)");
  cfg.validate();
  const std::vector<double> w = simpson_weights(grid);
  const std::size_t n = w.size();
  std::vector<double> xs(n), d2(n), fgw(n), g2w(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = grid_x(grid, static_cast<int>(i));
    d2[i] = (xs[i] - f.center) * (xs[i] - f.center);
    fgw[i] = f(xs[i]) * g(xs[i]) * w[i];
    g2w[i] = g.second_derivative(xs[i]) * w[i];
  }
  // a(r) = <g, T_r f - f>, b(r) = <g'', T_r f>; the r-dependent factors of
  // the bump's heat flow are hoisted out of the grid sums.
  auto a = [&](double r) {
    if (r <= 0.0) return 0.0;
    const double v = f.variance;
    const double k = -0.5 * std::log1p(2.0 * r / v);
    const double kappa = r / (v * (v + 2.0 * r));
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double expo = k + d2[i] * kappa;
      if (expo > 1.0) {
        s += g(xs[i]) * w[i] * (f.heat(r, xs[i]) - f(xs[i]));
      } else {
        s += fgw[i] * std::expm1(expo);
      }
    }
    return s;
  };
  auto b = [&](double r) {
    const double v = f.variance + 2.0 * r;
    const double pre = f.amplitude * std::sqrt(f.variance / v);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += g2w[i] * std::exp(-d2[i] / (2.0 * v));
    return pre * s;
  };

  const SubordinatorModel model(LaplaceExponent::stable(beta));
  const LogTimeDensity density(model, 1.0);
  const double p = 1.0 / (1.0 - beta);
  const double norm = std::tgamma(2.0 - beta);

  // J(t) = int g I_t^w(u) dx with s = t (1 - v^{1/(1-beta)}) removing the kernel singularity.
  auto J = [&](double t) {
    auto inner = [&](double v) {
      const double s = t * (1.0 - std::pow(v, p));
      return stable_expectation(density, beta, s, a, cfg, "A(s)");
    };
    const double pts[] = {0.0, 0.5, 0.9, 0.99, 0.999, 1.0};
    const double integral = quad::integrate_checked(inner, pts, cfg, "I_t^w");
    return std::pow(t, 1.0 - beta) / norm * integral;
  };

  WeakResidualReport rep;
  for (double t : t_grid) {
    if (!(t > 0.0)) throw DomainError("weak residual needs t > 0");
    const double h = 1e-3 * t;
    const double d_h = (J(t + h) - J(t - h)) / (2.0 * h);
    const double d_h2 = (J(t + 0.5 * h) - J(t - 0.5 * h)) / h;
    WeakResidualRow row;
    row.t = t;
    row.lhs = d_h2;
    row.rhs = stable_expectation(density, beta, t, b, cfg, "B(t)");
    row.residual = std::abs(row.lhs - row.rhs) / std::max(std::abs(row.rhs), grid.scale_floor);
    row.richardson = std::abs(d_h - d_h2) / std::max(std::abs(d_h2), grid.scale_floor);
    if (row.richardson > 0.1) {
      rep.warnings.push_back("time step too coarse at t = " + std::to_string(t) + ": Richardson disagreement " +
                             std::to_string(row.richardson));
    }
    rep.max_residual = std::max(rep.max_residual, row.residual);
    rep.rows.push_back(row);
  }
  return rep;
}

double initial_condition_error(double beta, const GaussianBump& f, double t0, const WeakResidualGrid& grid,
                               const QuadratureConfig& cfg) {
  double worst = 0.0;
  for (int i = 0; i < grid.points; ++i) {
    const double x = grid_x(grid, i);
    worst = std::max(worst, std::abs(heat_solution(beta, f, t0, x, cfg) - f(x)));
  }
  return worst;
}

}  // namespace fracheat
