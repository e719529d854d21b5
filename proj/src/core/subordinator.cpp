#include "subordinator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "error.hpp"

namespace fracheat {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

QuadratureConfig zolotarev_config() {
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-12;
  cfg.abs_floor = 1e-300;
  cfg.max_subdivisions = 2000;
  return cfg;
}

void check_beta(double beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw DomainError("stable index must lie in (0,1)");
}

// log(sin(u)/u) for u in (0, pi].
double log_sinc(double u) {
  if (u < 0.5) {
    const double u2 = u * u;
    const double m1 =
        u2 * (-1.0 / 6 + u2 * (1.0 / 120 + u2 * (-1.0 / 5040 + u2 * (1.0 / 362880 + u2 * (-1.0 / 39916800)))));
    return std::log1p(m1);
  }
  return std::log(std::sin(u) / u);
}

// A(theta) = A0 exp(B(theta)) with B increasing from B(0+) = 0 to +inf at pi.
// The half (pi/2, pi) is parametrised by phi = pi - theta so that sin(theta)
// keeps full relative precision near pi.
struct Zolotarev {
  double beta;
  double omb;     // 1 - beta
  double log_a0;  // log A(0+) = (beta/(1-beta)) log beta + log(1-beta)
  double a0;

  explicit Zolotarev(double b)
      : beta(b),
        omb(1.0 - b),
        log_a0(b / (1.0 - b) * std::log(b) + std::log(1.0 - b)),
        a0(std::exp(log_a0)) {}

  // B as a function of theta in (0, pi/2].
  double b_theta(double th) const {
    const double lb = log_sinc(beta * th);
    return (lb - log_sinc(th)) / omb + log_sinc(omb * th) - lb;
  }

  // B as a function of phi = pi - theta in (0, pi/2].
  double b_phi(double ph) const {
    const double th = kPi - ph;
    const double lb = log_sinc(beta * th);
    const double ls = std::log(std::sin(ph) / th);
    return (lb - ls) / omb + log_sinc(omb * th) - lb;
  }

  double log_a(double th) const { return log_a0 + (th <= 0.5 * kPi ? b_theta(th) : b_phi(kPi - th)); }
};

// Solves B = target by bisection in log theta (target below B(pi/2)) or in
// log phi (target above). Returns false in `on_theta_side` for the phi half.
double locate_level(const Zolotarev& z, double target, bool& on_theta_side) {
  const double mid_b = z.b_theta(0.5 * kPi);
  on_theta_side = target < mid_b;
  double lo = std::log(1e-300), hi = std::log(0.5 * kPi);
  for (int i = 0; i < 40; ++i) {
    const double m = 0.5 * (lo + hi);
    const double v = std::exp(m);
    // On the theta side B rises with m; on the phi side it falls.
    const bool below = on_theta_side ? (z.b_theta(v) < target) : (z.b_phi(v) > target);
    if (below) {
      lo = m;
    } else {
      hi = m;
    }
  }
  return std::exp(0.5 * (lo + hi));
}

// (1/pi) int_0^pi F(B(theta)) dtheta with breakpoints at the given B levels.
template <class F>
double zolotarev_integral(const Zolotarev& z, F integrand, const std::vector<double>& levels, const char* what) {
  std::vector<double> theta_pts, phi_pts;
  for (double level : levels) {
    if (!(level > 0.0) || !std::isfinite(level)) continue;
    bool theta_side = true;
    const double x = locate_level(z, level, theta_side);
    (theta_side ? theta_pts : phi_pts).push_back(x);
  }
  const QuadratureConfig cfg = zolotarev_config();
  const double left = quad::integrate_checked([&](double th) { return integrand(z.b_theta(th)); },
                                              quad::breakpoints(0.0, 0.5 * kPi, theta_pts), cfg, what);
  const double right = quad::integrate_checked([&](double ph) { return integrand(z.b_phi(ph)); },
                                               quad::breakpoints(0.0, 0.5 * kPi, phi_pts), cfg, what);
  return (left + right) / kPi;
}

// B levels where c (A - A0) crosses 1 and 30. When the integrand grows like
// exp(B) up to c A = 1 (density, survival) that level is added together with
// levels 2^k below it: for beta near 1 the rise is too steep for the rule to
// see from the far end of its panel.
std::vector<double> level_set(double log_ca0, bool rising) {
  std::vector<double> levels;
  for (double l : {1.0, 30.0}) {
    // log1p(l / (c A0)) without forming c A0, which underflows for beta near 1.
    const double u = std::log(l) - log_ca0;
    levels.push_back(u > 30.0 ? u + std::log1p(std::exp(-u)) : std::log1p(std::exp(u)));
  }
  if (rising && log_ca0 < 0.0) {
    const double peak = -log_ca0;
    levels.push_back(peak);
    for (double d = 1.0; d < peak; d *= 2.0) levels.push_back(peak - d);
  }
  return levels;
}

// log(e^b - 1) for b >= 0.
double log_expm1(double b) { return b > 30.0 ? b + std::log1p(-std::exp(-b)) : std::log(std::expm1(b)); }

double log_c_of(double beta, double x) { return -beta / (1.0 - beta) * std::log(x); }

void check_x(double x) {
  if (!(x > 0.0) || std::isnan(x)) throw DomainError("stable law needs x > 0");
}

// log sum exp of two values.
double log_add(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

// log int_{-inf}^{top} exp(L(y)) dy for a unimodal-ish log integrand: the
// maximum is located on a scan grid and refined by golden section, then the
// shifted integrand is integrated with a breakpoint at the maximum.
double log_integrate(const std::function<double(double)>& L, double bottom_hint, double top,
                     const QuadratureConfig& cfg, const char* what) {
  double lo = std::min(bottom_hint, top - 10.0);
  // Extend the scan window to the left while the integrand is still rising
  // in that direction.
  for (int i = 0; i < 200 && L(lo) >= L(lo + 1.0); ++i) lo -= 10.0;
  constexpr int kScan = 129;
  const double step = (top - lo) / (kScan - 1);
  double best = -kInf, best_y = top;
  int best_j = 0;
  for (int j = 0; j < kScan; ++j) {
    const double y = lo + step * j;
    const double v = L(y);
    if (v > best) {
      best = v;
      best_y = y;
      best_j = j;
    }
  }
  if (best == -kInf) return -kInf;
  double a = lo + step * std::max(0, best_j - 1);
  double b = lo + step * std::min(kScan - 1, best_j + 1);
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = L(x1), f2 = L(x2);
  for (int i = 0; i < 40; ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = L(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = L(x1);
    }
  }
  if (f1 > best) {
    best = f1;
    best_y = x1;
  }
  if (f2 > best) {
    best = f2;
    best_y = x2;
  }
  const double shift = best;
  auto f = [&](double y) {
    const double v = L(y) - shift;
    return v < -745.0 ? 0.0 : std::exp(v);
  };
  const auto pts = quad::breakpoints(-kInf, top, {best_y - 4.0 * step, best_y - step, best_y, best_y + step,
                                                  best_y + 4.0 * step, lo});
  // Only log P is meaningful this deep in a tail: once |log P| is large the
  // integrand carries absolute noise of order 1e-13 |log P| in its exponent,
  // so the relative target is widened to match.
  QuadratureConfig local = cfg;
  local.rel_tol = std::min(1e-2, std::max(cfg.rel_tol, 1e-13 * std::abs(shift)));
  const double integral = quad::integrate_checked(f, pts, local, what);
  return shift + std::log(integral);
}

// Far right tail: the convergent expansions in x^{-beta}
//   g(x)   = (1/pi) sum_k (-1)^{k+1} Gamma(beta k + 1)/k! sin(pi beta k) x^{-beta k - 1}
//   P(S>x) = (1/pi) sum_k (-1)^{k+1} Gamma(beta k)/k! sin(pi beta k) x^{-beta k}
// written as the leading term times 1 + (relative corrections).
constexpr double kSeriesLevel = 6.9;  // beta log x beyond which x^{-beta} < 1e-3

double tail_series_correction(double beta, double log_x, double shift) {
  const double lead = std::lgamma(beta + shift) + std::log(std::sin(kPi * beta));
  double sum = 0.0;
  for (int k = 2; k < 200; ++k) {
    const double bound = std::exp(std::lgamma(beta * k + shift) - std::lgamma(k + 1.0) - lead - beta * (k - 1) * log_x);
    const double sk = std::sin(kPi * beta * k);
    sum += ((k % 2 == 1) ? 1.0 : -1.0) * sk * bound;
    if (bound < 1e-18) break;
  }
  return std::log1p(sum);
}

double series_log_density(double beta, double log_x) {
  return std::lgamma(beta + 1.0) + std::log(std::sin(kPi * beta) / kPi) - (beta + 1.0) * log_x +
         tail_series_correction(beta, log_x, 1.0);
}

double series_log_survival(double beta, double log_x) {
  return std::lgamma(beta) + std::log(std::sin(kPi * beta) / kPi) - beta * log_x +
         tail_series_correction(beta, log_x, 0.0);
}

}  // namespace

namespace stable {

double log_density(double beta, double x) {
  check_beta(beta);
  check_x(x);
  if (std::isinf(x)) return -kInf;
  if (x > 1.0 && beta * std::log(x) >= kSeriesLevel) return series_log_density(beta, std::log(x));
  const Zolotarev z(beta);
  const double lca = log_c_of(beta, x) + z.log_a0;
  const double ca0 = std::exp(lca);
  if (ca0 == kInf) return -kInf;
  // b - c A0 (e^b - 1) peaks near -log(c A0) - 1; shift by that peak so the
  // integrand stays finite when c A0 underflows.
  const double shift = lca < -1.0 ? -lca - 1.0 : 0.0;
  auto f = [&](double b) {
    const double v = b - (b > 0.0 ? std::exp(lca + log_expm1(b)) : 0.0) - shift;
    return v < -745.0 ? 0.0 : std::exp(v);
  };
  const double integral = zolotarev_integral(z, f, level_set(lca, true), "stable density");
  return std::log(beta / (1.0 - beta)) - std::log(x) / (1.0 - beta) + z.log_a0 - ca0 + shift + std::log(integral);
}

double density(double beta, double x) { return std::exp(log_density(beta, x)); }

double log_cdf(double beta, double x) {
  check_beta(beta);
  check_x(x);
  if (std::isinf(x)) return 0.0;
  if (x > 1.0 && beta * std::log(x) >= kSeriesLevel) return std::log1p(-std::exp(series_log_survival(beta, std::log(x))));
  const Zolotarev z(beta);
  const double lca = log_c_of(beta, x) + z.log_a0;
  const double ca0 = std::exp(lca);
  if (ca0 == kInf) return -kInf;
  auto f = [&](double b) {
    const double v = b > 0.0 ? -std::exp(lca + log_expm1(b)) : 0.0;
    return v < -745.0 ? 0.0 : std::exp(v);
  };
  const double integral = zolotarev_integral(z, f, level_set(lca, false), "stable cdf");
  return -ca0 + std::log(integral);
}

double cdf(double beta, double x) { return std::exp(log_cdf(beta, x)); }

double survival(double beta, double x) {
  check_beta(beta);
  check_x(x);
  if (std::isinf(x)) return 0.0;
  if (x > 1.0 && beta * std::log(x) >= kSeriesLevel) return std::exp(series_log_survival(beta, std::log(x)));
  const Zolotarev z(beta);
  const double lca = log_c_of(beta, x) + z.log_a0;
  if (std::exp(lca) == kInf) return 1.0;
  auto f = [&](double b) { return -std::expm1(-std::exp(lca + b)); };
  return zolotarev_integral(z, f, level_set(lca, true), "stable survival");
}

double log_inverse_density(double beta, double e) {
  check_beta(beta);
  if (!(e > 0.0)) throw DomainError("inverse density needs e > 0");
  const double log_x = -std::log(e) / beta;
  if (beta * log_x >= kSeriesLevel) return series_log_density(beta, log_x) + log_x - std::log(beta * e);
  const double x = std::exp(log_x);
  return log_density(beta, x) + log_x - std::log(beta * e);
}

double inverse_density(double beta, double e) { return std::exp(log_inverse_density(beta, e)); }

double sample(double beta, RngStream& rng) {
  check_beta(beta);
  const Zolotarev z(beta);
  const double th = kPi * rng.uniform();
  const double w = rng.exponential();
  return std::exp((1.0 - beta) / beta * (z.log_a(th) - std::log(w)));
}

}  // namespace stable

SubordinatorModel::SubordinatorModel(LaplaceExponent exponent, QuadratureConfig cfg)
    : exponent_(std::move(exponent)), cfg_(cfg) {
  cfg_.validate();
}

void SubordinatorModel::require_distribution() const {
  if (exponent_.kind() == ExponentKind::ConstructedCBF) {
    throw UnsupportedModelError("distribution of S_r is only available for stable and mixture exponents");
  }
}

namespace {

// S_r for the component a lambda^beta has the law of (a r)^{1/beta} S_1.
double component_scale(const StableComponent& c, double r) { return std::pow(c.weight * r, 1.0 / c.beta); }

void check_rt(double r, double t) {
  if (!(r > 0.0) || !(t > 0.0) || std::isnan(r) || std::isnan(t)) {
    throw DomainError("subordinator laws need r > 0 and t > 0");
  }
}

}  // namespace

double SubordinatorModel::mixture_log_cdf(std::size_t k, double r, double t) const {
  const auto& comps = exponent_.components();
  const StableComponent& c = comps[k];
  const double sx = component_scale(c, r);
  if (k + 1 == comps.size()) return stable::log_cdf(c.beta, t / sx);
  double sy = 0.0;
  for (std::size_t i = k + 1; i < comps.size(); ++i) sy = std::max(sy, component_scale(comps[i], r));
  const double top = std::log(0.5 * t);
  // P(X + Y <= t) = int_0^t f_X(x) F_Y(t - x) dx, split at t/2 and written in
  // log x on the left half and log(t - x) on the right half.
  auto left = [&](double y) {
    const double x = std::exp(y);
    if (x <= 0.0) return -kInf;
    return stable::log_density(c.beta, x / sx) - std::log(sx) + y + mixture_log_cdf(k + 1, r, t - x);
  };
  auto right = [&](double y) {
    const double w = std::exp(y);
    if (w <= 0.0) return -kInf;
    return stable::log_density(c.beta, (t - w) / sx) - std::log(sx) + y + mixture_log_cdf(k + 1, r, w);
  };
  const double l1 = log_integrate(left, std::log(sx) - 10.0, top, cfg_, "mixture cdf");
  const double l2 = log_integrate(right, std::log(sy) - 10.0, top, cfg_, "mixture cdf");
  return std::min(0.0, log_add(l1, l2));
}

double SubordinatorModel::mixture_survival(std::size_t k, double r, double t) const {
  const auto& comps = exponent_.components();
  const StableComponent& c = comps[k];
  const double sx = component_scale(c, r);
  if (k + 1 == comps.size()) return stable::survival(c.beta, t / sx);
  double sy = 0.0;
  for (std::size_t i = k + 1; i < comps.size(); ++i) sy = std::max(sy, component_scale(comps[i], r));
  const double top = std::log(0.5 * t);
  // P(X + Y > t) = P(X > t) + int_0^t f_X(x) P(Y > t - x) dx.
  auto left = [&](double y) {
    const double x = std::exp(y);
    if (x <= 0.0) return 0.0;
    return stable::density(c.beta, x / sx) / sx * x * mixture_survival(k + 1, r, t - x);
  };
  auto right = [&](double y) {
    const double w = std::exp(y);
    if (w <= 0.0) return 0.0;
    return stable::density(c.beta, (t - w) / sx) / sx * w * mixture_survival(k + 1, r, w);
  };
  const auto pts = quad::breakpoints(-kInf, top, {std::log(sx), std::log(sy), top - 1.0});
  const double a = quad::integrate_checked(left, pts, cfg_, "mixture survival");
  const double b = quad::integrate_checked(right, pts, cfg_, "mixture survival");
  return std::min(1.0, stable::survival(c.beta, t / sx) + a + b);
}

double SubordinatorModel::log_cdf(double r, double t) const {
  require_distribution();
  check_rt(r, t);
  return mixture_log_cdf(0, r, t);
}

double SubordinatorModel::cdf(double r, double t) const { return std::exp(log_cdf(r, t)); }

double SubordinatorModel::survival(double r, double t) const {
  require_distribution();
  check_rt(r, t);
  return mixture_survival(0, r, t);
}

double SubordinatorModel::density_S(double r, double t) const {
  require_distribution();
  check_rt(r, t);
  const auto& comps = exponent_.components();
  if (comps.size() != 1) {
    throw UnsupportedModelError("the density of S_r is only exposed for single-component exponents");
  }
  const double s = component_scale(comps[0], r);
  return stable::density(comps[0].beta, t / s) / s;
}

double SubordinatorModel::density_E(double t, double r) const {
  require_distribution();
  check_rt(r, t);
  const auto& comps = exponent_.components();
  if (comps.size() == 1) {
    // P(E_t <= r) = P(S_1 >= x) with x = t (a r)^{-1/beta}; differentiate in r.
    const double beta = comps[0].beta;
    const double x = t / component_scale(comps[0], r);
    return stable::density(beta, x) * x / (beta * r);
  }
  const double h = r * 1e-5;
  return (survival(r + h, t) - survival(r - h, t)) / (2.0 * h);
}

double SubordinatorModel::sample_S(double r, RngStream& rng) const {
  require_distribution();
  double sum = 0.0;
  for (const auto& c : exponent_.components()) sum += component_scale(c, r) * stable::sample(c.beta, rng);
  return sum;
}

double SubordinatorModel::sample_E(double t, RngStream& rng) const {
  require_distribution();
  const auto& comps = exponent_.components();
  if (comps.size() == 1) {
    // P(E_t <= r) = P(S_1 >= t (a r)^{-1/beta}) gives E_t = (t / S_1)^beta / a.
    const double s1 = stable::sample(comps[0].beta, rng);
    return std::pow(t / s1, comps[0].beta) / comps[0].weight;
  }
  return sample_E_path(t, rng, path_fraction_);
}

double SubordinatorModel::sample_E_path(double t, RngStream& rng, double fraction) const {
  require_distribution();
  if (!(fraction > 0.0)) throw DomainError("path step fraction must be positive");
  const double delta = fraction / exponent_.value(1.0 / t);
  double s = 0.0, level = 0.0;
  for (std::size_t i = 0; i < 100000000; ++i) {
    const double inc = sample_S(delta, rng);
    if (level + inc > t) return s + delta * (t - level) / inc;
    level += inc;
    s += delta;
  }
  throw NonConvergenceError("inverse subordinator path did not cross the level", s, kInf);
}

void SubordinatorModel::set_path_fraction(double fraction) {
  if (!(fraction > 0.0 && fraction < 1.0)) throw DomainError("path step fraction must lie in (0,1)");
  path_fraction_ = fraction;
}

double SubordinatorModel::calibrate_path_fraction(double t, std::size_t n, std::uint64_t seed, double rel_tol,
                                                  double start) const {
  auto pilot = [&](double fraction) {
    RngStream rng(seed, 0);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += sample_E_path(t, rng, fraction);
    return sum / static_cast<double>(n);
  };
  double fraction = start;
  double previous = pilot(fraction);
  while (fraction > 1e-6) {
    const double next = pilot(0.5 * fraction);
    fraction *= 0.5;
    if (std::abs(next - previous) < rel_tol * std::abs(next)) return fraction;
    previous = next;
  }
  throw NonConvergenceError("path step calibration did not settle", fraction, kInf);
}

TailBoundsReport subordinator_tail_bounds(const SubordinatorModel& model, const std::vector<GridPoint>& grid, double lower_L) {
  TailBoundsReport rep;
  rep.lower_L = lower_L;
  const LaplaceExponent& phi = model.exponent();
  rep.c_es2 = rep.c_upper = rep.c_upper_second = rep.ratio_lo = kInf;
  double ratio_hi = 0.0;
  for (const auto& p : grid) {
    const double rphi = p.r * phi.value(1.0 / p.t);
    const double tail = model.survival(p.r, p.t * (1.0 + std::numbers::e * rphi));
    rep.c_es1 = std::max(rep.c_es1, tail / rphi);
    const double neg_log_cdf = -model.log_cdf(p.r, p.t);
    rep.c_es2 = std::min(rep.c_es2, neg_log_cdf / rphi);
    const double s = phi.derivative_inverse(p.t / p.r);
    const double m1 = p.r * phi.value(s);
    const double m2 = p.t * s;
    rep.c_upper = std::min(rep.c_upper, neg_log_cdf / m1);
    rep.c_upper_second = std::min(rep.c_upper_second, neg_log_cdf / m2);
    if (rphi > lower_L) {
      rep.c0_lower = std::max(rep.c0_lower, neg_log_cdf / m1);
      ++rep.far_rows;
    }
    if (rphi <= 1.0) {
      const double ratio = model.survival(p.r, p.t) / rphi;
      rep.ratio_lo = std::min(rep.ratio_lo, ratio);
      ratio_hi = std::max(ratio_hi, ratio);
      ++rep.near_rows;
    }
    ++rep.rows;
  }
  rep.ratio_hi = ratio_hi;
  auto finite_positive = [&](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) rep.failures.push_back(std::string(name) + " not finite and positive");
  };
  if (rep.rows > 0) {
    finite_positive(rep.c_es1, "c1 in P(S_r >= t(1+e r phi)) <= c1 r phi");
    finite_positive(rep.c_es2, "c2 in P(S_r >= t) >= 1 - exp(-c2 r phi)");
    finite_positive(rep.c_upper, "c1 in P(S_r <= t) <= exp(-c1 r phi((phi')^-1(t/r)))");
    finite_positive(rep.c_upper_second, "c1 in P(S_r <= t) <= exp(-c1 t (phi')^-1(t/r))");
  }
  if (rep.far_rows > 0) finite_positive(rep.c0_lower, "c0 in the lower bound");
  if (rep.near_rows > 0) {
    finite_positive(rep.ratio_lo, "c_L");
    finite_positive(rep.ratio_hi, "c_U");
  }
  rep.pass = rep.failures.empty();
  return rep;
}

TimeIdentityReport time_identities(const SubordinatorModel& model, double t) {
  const LaplaceExponent& phi = model.exponent();
  if (phi.kind() != ExponentKind::Stable) {
    throw UnsupportedModelError("time identity check needs a stable exponent");
  }
  if (!(t > 0.0)) throw DomainError("time identity check needs t > 0");
  const double beta = phi.beta_lo();
  QuadratureConfig inner;
  inner.rel_tol = 1e-8;
  QuadratureConfig outer;
  outer.rel_tol = 1e-7;

  // psi(r) = E[G(t - S_r); S_r <= t], split at t/2 and integrated in log x
  // and log(t - x).
  auto psi = [&](double r) {
    const double sr = std::pow(r, 1.0 / beta);
    if (!(sr > 0.0)) return phi.integrated_levy_tail(t);
    if (!std::isfinite(sr)) return 0.0;
    const double top = std::log(0.5 * t);
    auto left = [&](double y) {
      const double x = std::exp(y);
      if (x <= 0.0) return 0.0;
      return phi.integrated_levy_tail(t - x) * stable::density(beta, x / sr) / sr * x;
    };
    auto right = [&](double y) {
      const double w = std::exp(y);
      if (w <= 0.0) return 0.0;
      return phi.integrated_levy_tail(w) * stable::density(beta, (t - w) / sr) / sr * w;
    };
    const auto pts = quad::breakpoints(-kInf, top, {std::log(sr), top - 1.0});
    return quad::integrate_checked(left, pts, inner, "time identity inner") +
           quad::integrate_checked(right, pts, inner, "time identity inner");
  };

  TimeIdentityReport rep;
  const double r0 = 1.0 / phi.value(1.0 / t);
  const double lr0 = std::log(r0);
  const double total = quad::integrate_checked([&](double y) { return psi(std::exp(y)) * std::exp(y); },
                                               {-kInf, lr0 - 2.0, lr0, lr0 + 2.0, kInf}, outer,
                                               "time identity outer");
  rep.renewal_residual = std::abs(total - t) / t;

  const double g_t = phi.integrated_levy_tail(t);
  const double scale = std::pow(t, 1.0 - beta) / std::tgamma(2.0 - beta);
  for (double s : {0.5 * t, t, 2.0 * t}) {
    // int_0^t w(t - r) P(S_s > r) dr with r = t (1 - v^{1/(1-beta)}).
    auto f = [&](double v) {
      const double r = t * (1.0 - std::pow(v, 1.0 / (1.0 - beta)));
      return r <= 0.0 ? 1.0 : model.survival(s, r);
    };
    const double lhs = scale * quad::integrate_checked(f, {0.0, 0.5, 1.0}, outer, "time identity first identity");
    const double rhs = g_t - psi(s);
    rep.first_identity_residuals.push_back(std::abs(lhs - rhs) / g_t);
  }
  return rep;
}

KsBounds ks_distance_bounds(const std::vector<double>& sorted, const std::function<double(double)>& cdf,
                            std::size_t stride) {
  if (sorted.empty()) throw DomainError("KS distance needs at least one draw");
  if (stride == 0) throw DomainError("KS stride must be positive");
  const std::size_t n = sorted.size();
  const double nn = static_cast<double>(n);
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < n; i += stride) idx.push_back(i);
  if (idx.back() != n - 1) idx.push_back(n - 1);
  std::vector<double> F(idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k) F[k] = cdf(sorted[idx[k]]);

  KsBounds out;
  out.cdf_evaluations = idx.size();
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const double i = static_cast<double>(idx[k]);
    out.lower = std::max({out.lower, (i + 1.0) / nn - F[k], F[k] - i / nn});
  }
  out.upper = out.lower;
  for (std::size_t k = 0; k + 1 < idx.size(); ++k) {
    if (idx[k + 1] == idx[k] + 1) continue;
    // Draws strictly inside the cell have i in (a, b) and F between the endpoint values.
    const double a = static_cast<double>(idx[k]), b = static_cast<double>(idx[k + 1]);
    out.upper = std::max({out.upper, b / nn - F[k], F[k + 1] - (a + 1.0) / nn});
  }
  return out;
}

}  // namespace fracheat
