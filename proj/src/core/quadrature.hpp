#pragma once

#include <functional>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

namespace fracheat {

/// Tolerances shared by every adaptive integration in the library.
struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_floor = 1e-300;
  int max_subdivisions = 2000;

  /// Throws DomainError unless rel_tol is in (0,1) and max_subdivisions >= 10.
  void validate() const;
};

namespace quad {

using Integrand = std::function<double(double)>;

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;
  int evaluations = 0;
  int intervals = 0;
  bool converged = true;
};

/// Globally adaptive 21-point Gauss-Kronrod integration over the union of
/// consecutive intervals [points[i], points[i+1]]. The first point may be
/// -infinity and the last +infinity; infinite tails are mapped onto (0,1]
/// with x = a + (1 - u)/u. The interval with the largest error estimate is
/// bisected until the summed error drops below
/// max(abs_floor, rel_tol * |total|) or max_subdivisions is reached.
QuadResult integrate(const Integrand& f, std::span<const double> points, const QuadratureConfig& cfg);

inline QuadResult integrate(const Integrand& f, std::initializer_list<double> points,
                            const QuadratureConfig& cfg) {
  return integrate(f, std::span<const double>(points.begin(), points.size()), cfg);
}

inline QuadResult integrate(const Integrand& f, double a, double b, const QuadratureConfig& cfg) {
  const double pts[2] = {a, b};
  return integrate(f, std::span<const double>(pts, 2), cfg);
}

/// As integrate(), but throws NonConvergenceError (tagged with `what`) when
/// the tolerance was not reached or the value is not finite.
double integrate_checked(const Integrand& f, std::span<const double> points, const QuadratureConfig& cfg,
                         std::string_view what);

inline double integrate_checked(const Integrand& f, std::initializer_list<double> points,
                                const QuadratureConfig& cfg, std::string_view what) {
  return integrate_checked(f, std::span<const double>(points.begin(), points.size()), cfg, what);
}

/// Sorted, deduplicated breakpoints restricted to the open interval (lo, hi),
/// with lo and hi prepended/appended.
std::vector<double> breakpoints(double lo, double hi, std::vector<double> interior);

}  // namespace quad
}  // namespace fracheat
