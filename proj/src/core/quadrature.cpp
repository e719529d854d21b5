#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "error.hpp"

namespace fracheat {

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
    throw DomainError("quadrature rel_tol must lie in (0,1)");
  }
  if (!(abs_floor >= 0.0)) throw DomainError("quadrature abs_floor must be non-negative");
  if (max_subdivisions < 10) throw DomainError("quadrature max_subdivisions must be at least 10");
}

namespace quad {
namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
using Gauss = boost::math::quadrature::gauss<double, 10>;

constexpr double kEps = std::numeric_limits<double>::epsilon();

enum class Map { Finite, UpperTail, LowerTail };

struct Segment {
  Map map;
  double anchor;  // the finite endpoint for tail maps
};

struct Piece {
  int segment;
  double lo, hi;
  double value, error;
  bool operator<(const Piece& other) const { return error < other.error; }
};

struct RuleResult {
  double value, error;
};

// Evaluates the integrand of segment `s` at the mapped coordinate u.
double mapped(const Integrand& f, const Segment& s, double u) {
  switch (s.map) {
    case Map::Finite:
      return f(u);
    case Map::UpperTail: {
      const double x = s.anchor + (1.0 - u) / u;
      return f(x) / (u * u);
    }
    case Map::LowerTail: {
      const double x = s.anchor - (1.0 - u) / u;
      return f(x) / (u * u);
    }
  }
  return 0.0;
}

RuleResult kronrod21(const Integrand& f, const Segment& s, double lo, double hi, int& evals) {
  static const auto& xk = Kronrod::abscissa();
  static const auto& wk = Kronrod::weights();
  static const auto& wg = Gauss::weights();

  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  double fv1[10], fv2[10];

  const double fc = mapped(f, s, center);
  double resk = wk[0] * fc;
  double resg = 0.0;
  double resabs = wk[0] * std::abs(fc);
  for (int j = 1; j <= 10; ++j) {
    const double dx = half * xk[j];
    const double f1 = mapped(f, s, center - dx);
    const double f2 = mapped(f, s, center + dx);
    fv1[j - 1] = f1;
    fv2[j - 1] = f2;
    resk += wk[j] * (f1 + f2);
    resabs += wk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) resg += wg[j / 2] * (f1 + f2);
  }
  evals += 21;

  const double mean = 0.5 * resk;
  double resasc = wk[0] * std::abs(fc - mean);
  for (int j = 1; j <= 10; ++j) {
    resasc += wk[j] * (std::abs(fv1[j - 1] - mean) + std::abs(fv2[j - 1] - mean));
  }
  const double ah = std::abs(half);
  resasc *= ah;
  resabs *= ah;
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
    err = std::max(50.0 * kEps * resabs, err);
  }
  return {resk * half, err};
}

bool too_narrow(double lo, double hi) {
  const double scale = std::max({std::abs(lo), std::abs(hi), std::numeric_limits<double>::min()});
  return (hi - lo) <= 100.0 * kEps * scale;
}

}  // namespace

QuadResult integrate(const Integrand& f, std::span<const double> points, const QuadratureConfig& cfg) {
  QuadResult out;
  if (points.size() < 2) return out;

  std::vector<Segment> segments;
  std::vector<Piece> active;  // max-heap on error
  std::vector<Piece> frozen;  // too narrow to bisect further
  double active_value = 0.0, active_error = 0.0;
  double frozen_value = 0.0, frozen_error = 0.0;

  auto add_piece = [&](int seg, double lo, double hi) {
    const RuleResult r = kronrod21(f, segments[static_cast<std::size_t>(seg)], lo, hi, out.evaluations);
    const Piece p{seg, lo, hi, r.value, r.error};
    if (too_narrow(lo, hi)) {
      frozen.push_back(p);
      frozen_value += p.value;
      frozen_error += p.error;
    } else {
      active.push_back(p);
      std::push_heap(active.begin(), active.end());
      active_value += p.value;
      active_error += p.error;
    }
  };

  auto add_segment = [&](Map map, double anchor, double lo, double hi) {
    segments.push_back({map, anchor});
    add_piece(static_cast<int>(segments.size() - 1), lo, hi);
  };

  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const double a = points[i];
    const double b = points[i + 1];
    if (a == b) continue;
    if (!(a < b)) throw DomainError("integration breakpoints must be increasing");
    const bool lower_inf = std::isinf(a);
    const bool upper_inf = std::isinf(b);
    if (lower_inf && upper_inf) {
      add_segment(Map::LowerTail, 0.0, 0.0, 1.0);
      add_segment(Map::UpperTail, 0.0, 0.0, 1.0);
    } else if (lower_inf) {
      add_segment(Map::LowerTail, b, 0.0, 1.0);
    } else if (upper_inf) {
      add_segment(Map::UpperTail, a, 0.0, 1.0);
    } else {
      add_segment(Map::Finite, 0.0, a, b);
    }
  }

  auto resum = [&] {
    active_value = 0.0;
    active_error = 0.0;
    for (const auto& p : active) {
      active_value += p.value;
      active_error += p.error;
    }
  };

  int iterations = 0;
  while (!active.empty() && static_cast<int>(active.size() + frozen.size()) < cfg.max_subdivisions) {
    const double value = active_value + frozen_value;
    const double error = active_error + frozen_error;
    if (!std::isfinite(value)) break;
    if (error <= std::max(cfg.abs_floor, cfg.rel_tol * std::abs(value))) break;

    std::pop_heap(active.begin(), active.end());
    const Piece worst = active.back();
    active.pop_back();
    active_value -= worst.value;
    active_error -= worst.error;
    const double mid = 0.5 * (worst.lo + worst.hi);
    add_piece(worst.segment, worst.lo, mid);
    add_piece(worst.segment, mid, worst.hi);
    // Running sums drift under repeated subtraction; refresh them regularly.
    if (++iterations % 64 == 0) resum();
  }

  std::vector<Piece> all = std::move(frozen);
  all.insert(all.end(), active.begin(), active.end());
  std::sort(all.begin(), all.end(),
            [](const Piece& a, const Piece& b) { return std::abs(a.value) < std::abs(b.value); });
  double value = 0.0, error = 0.0;
  for (const auto& p : all) {
    value += p.value;
    error += p.error;
  }
  out.value = value;
  out.abs_error = error;
  out.intervals = static_cast<int>(all.size());
  out.converged = std::isfinite(value) && error <= std::max(cfg.abs_floor, cfg.rel_tol * std::abs(value));
  return out;
}

double integrate_checked(const Integrand& f, std::span<const double> points, const QuadratureConfig& cfg,
                         std::string_view what) {
  const QuadResult r = integrate(f, points, cfg);
  if (!r.converged) {
    std::ostringstream msg;
    msg << "quadrature did not converge (" << what << "): value " << r.value << ", error estimate "
        << r.abs_error << " after " << r.intervals << " intervals";
    throw NonConvergenceError(msg.str(), r.value, r.abs_error);
  }
  return r.value;
}

std::vector<double> breakpoints(double lo, double hi, std::vector<double> interior) {
  std::vector<double> pts;
  pts.reserve(interior.size() + 2);
  pts.push_back(lo);
  std::sort(interior.begin(), interior.end());
  for (double p : interior) {
    if (p > lo && p < hi && p > pts.back()) pts.push_back(p);
  }
  pts.push_back(hi);
  return pts;
}

}  // namespace quad
}  // namespace fracheat
