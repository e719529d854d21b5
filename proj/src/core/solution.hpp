#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "kernels.hpp"
#include "quadrature.hpp"
#include "rng.hpp"
#include "subordinator.hpp"

namespace fracheat {

enum class SolutionMethod { Quadrature, MonteCarlo, Fourier };

const char* method_name(SolutionMethod method);

struct SolutionEstimate {
  double value = 0.0;
  /// Quadrature error bound, or the standard error for Monte Carlo.
  double error = 0.0;
  SolutionMethod method = SolutionMethod::Quadrature;
  bool converged = true;
};

/// p(t, z) = int_0^inf q(s, z) h_t(s) ds with h_t the density of E_t, in the
/// variable y = log(s phi(1/t)). Splits at y = log(Phi(z) phi(1/t)), 0 and
/// log 2. DomainError at z = 0 when the on-diagonal integral diverges.
SolutionEstimate p_quadrature(const SpatialKernel& kernel, const SubordinatorModel& model, double t, double z,
                              const QuadratureConfig& cfg = {});

/// Mean and standard error of q(E_t, z) over n draws of E_t.
SolutionEstimate p_monte_carlo(const SpatialKernel& kernel, const SubordinatorModel& model, double t, double z,
                               std::size_t n, RngStream& rng);

/// (1/pi) int_0^inf cos(xi z) E_beta(-xi^alpha t^beta) d xi for d = 1 and
/// alpha in {1, 2}. At z = 0 the tail beyond E's asymptotic radius is summed
/// in closed form (needs alpha > 1); for z > 0 the integral is split into
/// half periods of the cosine and the partial sums are Wynn-accelerated.
SolutionEstimate p_fourier_oracle(double beta, double alpha, int d, double t, double z);

/// |int_R p(t, |y|) dy - 1| for a one-dimensional exact kernel.
double mass_residual(const SpatialKernel& kernel, const SubordinatorModel& model, double t,
                     const QuadratureConfig& cfg = {});

/// a exp(-(x - c)^2 / (2 v)).
struct GaussianBump {
  double amplitude = 1.0;
  double center = 0.0;
  double variance = 0.5;

  double operator()(double x) const;
  double second_derivative(double x) const;
  /// Heat semigroup e^{r d^2/dx^2} applied to the bump, evaluated at x.
  double heat(double r, double x) const;
};

/// u(t, x) = E[T_{E_t} f(x)] under Stable(beta) and the 1-d heat semigroup.
double heat_solution(double beta, const GaussianBump& f, double t, double x, const QuadratureConfig& cfg = {});

/// int p(t, |x - y|) f(y) dy with p from p_quadrature; cross-checks heat_solution.
double heat_solution_by_convolution(double beta, const GaussianBump& f, double t, double x,
                                    const QuadratureConfig& cfg = {});

struct WeakResidualRow {
  double t = 0.0;
  /// d/dt int g I_t^w(u) dx, central difference with step 1e-3 t / 2.
  double lhs = 0.0;
  /// int u(t, .) g'' dx.
  double rhs = 0.0;
  double residual = 0.0;
  /// |D(h) - D(h/2)| / |D(h/2)| for the two central differences.
  double richardson = 0.0;
};

struct WeakResidualReport {
  double max_residual = 0.0;
  std::vector<WeakResidualRow> rows;
  std::vector<std::string> warnings;
};

struct WeakResidualGrid {
  double x_lo = -8.0;
  double x_hi = 8.0;
  int points = 257;
  /// Denominator floor in |lhs - rhs| / max(|rhs|, floor).
  double scale_floor = 1e-8;
};

/// Both sides of the weak formulation with w(s) = s^{-beta} / Gamma(1 - beta),
/// L the 1-d Laplacian and spatial integrals by Simpson's rule on the grid.
WeakResidualReport caputo_weak_residual(double beta, const GaussianBump& f, const GaussianBump& g,
                                        const std::vector<double>& t_grid, const WeakResidualGrid& grid = {},
                                        const QuadratureConfig& cfg = {});

/// max over the grid of |u(t0, x) - f(x)|.
double initial_condition_error(double beta, const GaussianBump& f, double t0, const WeakResidualGrid& grid = {},
                               const QuadratureConfig& cfg = {});

}  // namespace fracheat
