#pragma once

#include <vector>

namespace fracheat::special {

/// 1/Gamma(x), exactly zero at the poles x = 0, -1, -2, ...
double reciprocal_gamma(double x);

enum class MittagLefflerBranch { Series, Integral, Asymptotic };

/// Radii at which mittag_leffler() switches from the power series to the
/// integral representation and from there to the asymptotic expansion.
inline constexpr double kMittagLefflerSeriesRadius = 1.0;
inline constexpr double kMittagLefflerAsymptoticRadius = 50.0;

/// E_beta(-x) for beta in (0,1) and x >= 0.
///   x <= 1      : sum_k (-x)^k / Gamma(1 + beta k)
///   1 < x < 50  : (sin(beta pi)/(beta pi)) int_0^inf exp(-v^{1/beta}) x / (v^2 + 2 x v cos(beta pi) + x^2) dv
///   x >= 50     : sum_{k>=1} (-1)^{k+1} x^{-k} / Gamma(1 - beta k), truncated at the smallest term
double mittag_leffler(double beta, double x);

/// Evaluates one branch regardless of x, for continuity checks at the switchovers.
double mittag_leffler_branch(double beta, double x, MittagLefflerBranch branch);

/// Wynn's epsilon algorithm applied to a sequence of partial sums; returns the
/// extrapolated limit estimate and the difference between the last two
/// estimates in `change`.
double wynn_epsilon(const std::vector<double>& partial_sums, double& change);

}  // namespace fracheat::special
