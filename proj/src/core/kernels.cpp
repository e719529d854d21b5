#include "kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "error.hpp"

namespace fracheat {

namespace {
constexpr double kPi = std::numbers::pi;
}

SpatialKernel::SpatialKernel(KernelKind kind, int d, VolumeFunction volume, SpaceTimeScale scale)
    : kind_(kind), d_(d), volume_(std::move(volume)), scale_(std::move(scale)) {
  if (kind == KernelKind::ExactCauchy) {
    cauchy_norm_ = std::tgamma(0.5 * (d + 1)) / std::pow(kPi, 0.5 * (d + 1));
  }
}

SpatialKernel SpatialKernel::gaussian(int d) {
  if (d < 1) throw DomainError("kernel dimension must be >= 1");
  return SpatialKernel(KernelKind::ExactGaussian, d, VolumeFunction::power(d), SpaceTimeScale::power(2.0));
}

SpatialKernel SpatialKernel::cauchy(int d) {
  if (d < 1) throw DomainError("kernel dimension must be >= 1");
  return SpatialKernel(KernelKind::ExactCauchy, d, VolumeFunction::power(d), SpaceTimeScale::power(1.0));
}

SpatialKernel SpatialKernel::jump(VolumeFunction volume, SpaceTimeScale scale) {
  return SpatialKernel(KernelKind::JumpSurrogate, 0, std::move(volume), std::move(scale));
}

SpatialKernel SpatialKernel::diffusion(VolumeFunction volume, SpaceTimeScale scale) {
  if (!(scale.alpha_lo() > 1.0)) throw DomainError("diffusion surrogate needs alpha_1 > 1");
  return SpatialKernel(KernelKind::DiffusionSurrogate, 0, std::move(volume), std::move(scale));
}

double SpatialKernel::log_eval(double t, double z) const {
  if (!(t > 0.0) || !(z >= 0.0)) throw DomainError("kernel needs t > 0 and z >= 0");
  switch (kind_) {
    case KernelKind::ExactGaussian:
      return -0.5 * d_ * std::log(4.0 * kPi * t) - z * z / (4.0 * t);
    case KernelKind::ExactCauchy:
    {
      // log(t^2 + z^2) without underflow of the squares.
      const double m = std::max(t, z);
      const double r = std::min(t, z) / m;
      return std::log(cauchy_norm_) + std::log(t) - 0.5 * (d_ + 1) * (2.0 * std::log(m) + std::log1p(r * r));
    }
    case KernelKind::JumpSurrogate:
      return std::log(t) - std::log(t * volume_(scale_.inverse(t)) + scale_(z) * volume_(z));
    case KernelKind::DiffusionSurrogate: {
      const double m = z > 0.0 ? solve_m(scale_, t, z) : 0.0;
      return -m - std::log(volume_(scale_.inverse(t)));
    }
  }
  return 0.0;
}

double SpatialKernel::eval(double t, double z) const {
  if (!(t > 0.0) || !(z >= 0.0)) throw DomainError("kernel needs t > 0 and z >= 0");
  switch (kind_) {
    case KernelKind::ExactGaussian:
      return std::pow(4.0 * kPi * t, -0.5 * d_) * std::exp(-z * z / (4.0 * t));
    case KernelKind::ExactCauchy:
      if (t < 1e-150 || z > 1e150) return std::exp(log_eval(t, z));
      return cauchy_norm_ * t / std::pow(t * t + z * z, 0.5 * (d_ + 1));
    case KernelKind::JumpSurrogate:
      return t / (t * volume_(scale_.inverse(t)) + scale_(z) * volume_(z));
    case KernelKind::DiffusionSurrogate:
      return std::exp(log_eval(t, z));
  }
  return 0.0;
}

double SpatialKernel::small_time_diagonal_exponent() const {
  switch (kind_) {
    case KernelKind::ExactGaussian:
      return 0.5 * d_;
    case KernelKind::ExactCauchy:
      return static_cast<double>(d_);
    case KernelKind::JumpSurrogate:
    case KernelKind::DiffusionSurrogate:
      // The small-r branches of V and Phi govern V(Phi^{-1}(t)) as t -> 0.
      return volume_.exponent_low() / scale_.exponent_low();
  }
  return 0.0;
}

std::string SpatialKernel::describe() const {
  std::ostringstream out;
  switch (kind_) {
    case KernelKind::ExactGaussian:
      out << "gaussian:" << d_;
      break;
    case KernelKind::ExactCauchy:
      out << "cauchy:" << d_;
      break;
    case KernelKind::JumpSurrogate:
      out << "jump(V=" << volume_.describe() << ",Phi=" << scale_.describe() << ")";
      break;
    case KernelKind::DiffusionSurrogate:
      out << "diffusion(V=" << volume_.describe() << ",Phi=" << scale_.describe() << ")";
      break;
  }
  return out.str();
}

DerivativeReport qbar_derivative_check(const SpatialKernel& kernel, const std::vector<double>& t_grid,
                                       const std::vector<double>& rho_grid) {
  DerivativeReport rep;
  if (kernel.is_exact()) {
    rep.failures.push_back("derivative check applies to surrogate kernels only");
    return rep;
  }
  if (t_grid.empty() || rho_grid.empty()) {
    rep.failures.push_back("empty grid");
    return rep;
  }
  std::vector<double> rhos = rho_grid;
  std::sort(rhos.begin(), rhos.end());
  const bool diffusion = kernel.kind() == KernelKind::DiffusionSurrogate;
  const SpaceTimeScale& phi_scale = kernel.scale();
  const VolumeFunction& vol = kernel.volume();
  constexpr double kInf = std::numeric_limits<double>::infinity();

  // all_negative_upto[j]: R < 0 at every t for rho_0..rho_j; similarly from j on.
  std::vector<bool> neg(rhos.size(), true), pos(rhos.size(), true);
  std::vector<double> min_decay(rhos.size(), kInf), min_growth(rhos.size(), kInf);
  for (double t : t_grid) {
    for (std::size_t j = 0; j < rhos.size(); ++j) {
      const double z = phi_scale.inverse(rhos[j] * t);
      auto dlog = [&](double h) { return (kernel.log_eval(t + h, z) - kernel.log_eval(t - h, z)) / (2.0 * h); };
      const double h = 1e-5 * t;
      const double d1 = dlog(h);
      const double d2 = dlog(0.5 * h);
      double d = d2;
      if (std::abs(d1 - d2) > 1e-3 * std::max(std::abs(d2), 1e-300)) {
        d = (4.0 * d2 - d1) / 3.0;
        ++rep.richardson_corrections;
      }
      const double R = t * d;  // t dq/dt / q
      if (!std::isfinite(R)) {
        rep.failures.push_back("non-finite derivative on the grid");
        continue;
      }
      if (diffusion) {
        const double m = z > 0.0 ? solve_m(phi_scale, t, z) : 0.0;
        const double logv = std::log(vol(phi_scale.inverse(t)));
        // |t dq/dt| V exp(m/2) = |R| exp(log q + log V + m/2).
        const double c = std::abs(R) * std::exp(kernel.log_eval(t, z) + logv + 0.5 * m);
        rep.c1 = std::max(rep.c1, c);
      } else {
        rep.c1 = std::max(rep.c1, std::abs(R));
      }
      if (!(R < 0.0)) neg[j] = false;
      if (!(R > 0.0)) pos[j] = false;
      min_decay[j] = std::min(min_decay[j], -R);
      min_growth[j] = std::min(min_growth[j], R);
    }
  }
  std::size_t lower_end = 0;  // number of leading rhos with R < 0
  while (lower_end < rhos.size() && neg[lower_end]) ++lower_end;
  std::size_t upper_begin = rhos.size();  // first index of the trailing run with R > 0
  while (upper_begin > 0 && pos[upper_begin - 1]) --upper_begin;

  if (lower_end == 0) rep.failures.push_back("no decaying regime at small Phi(z)/t");
  if (upper_begin == rhos.size()) rep.failures.push_back("no growing regime at large Phi(z)/t");
  if (rep.failures.empty()) {
    rep.c_lower = rhos[lower_end - 1];
    rep.c_upper = rhos[upper_begin];
    rep.decay_rate = kInf;
    for (std::size_t j = 0; j < lower_end; ++j) rep.decay_rate = std::min(rep.decay_rate, min_decay[j]);
    rep.growth_rate = kInf;
    for (std::size_t j = upper_begin; j < rhos.size(); ++j) rep.growth_rate = std::min(rep.growth_rate, min_growth[j]);
    if (!(rep.c_lower > 0.0 && rep.c_lower < rep.c_upper && std::isfinite(rep.c_upper))) {
      rep.failures.push_back("thresholds do not satisfy 0 < c_* < c^* < inf");
    }
    if (!std::isfinite(rep.c1)) rep.failures.push_back("c1 not finite");
  }
  rep.pass = rep.failures.empty();
  return rep;
}

}  // namespace fracheat
