#include "harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "selftest.hpp"
#include "subordinator.hpp"

namespace fracheat {
namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string opt(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

std::pair<std::string, std::string> split_spec(const std::string& spec) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string::npos) return {trim(spec), ""};
  return {trim(spec.substr(0, colon)), trim(spec.substr(colon + 1))};
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> out;
  if (n <= 0) return out;
  if (n == 1) return {lo};
  for (int i = 0; i < n; ++i) out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
  return out;
}

std::vector<double> lin_grid(double lo, double hi, int n) {
  std::vector<double> out;
  if (n == 1) return {lo};
  for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * i / (n - 1));
  return out;
}

SolutionMethod parse_method(const std::string& s) {
  if (s == "quad") return SolutionMethod::Quadrature;
  if (s == "mc") return SolutionMethod::MonteCarlo;
  if (s == "fourier") return SolutionMethod::Fourier;
  throw UsageError("method must be quad, mc or fourier (got '" + s + "')");
}

std::vector<double> required_list(const Config& cfg, const std::string& key) {
  auto v = cfg.get_list(key);
  if (v.empty()) throw UsageError("missing --" + key);
  return v;
}

double fourier_alpha(const SpatialKernel& kernel) {
  if (kernel.dimension() != 1) throw UnsupportedModelError("the Fourier oracle needs a 1-d exact kernel");
  if (kernel.kind() == KernelKind::ExactGaussian) return 2.0;
  if (kernel.kind() == KernelKind::ExactCauchy) return 1.0;
  throw UnsupportedModelError("the Fourier oracle needs an exact kernel");
}

double fourier_beta(const LaplaceExponent& exponent) {
  const auto& c = exponent.components();
  if (exponent.kind() != ExponentKind::Stable || c.size() != 1 || c[0].weight != 1.0) {
    throw UnsupportedModelError("the Fourier oracle needs a unit-weight stable exponent");
  }
  return c[0].beta;
}

void write_output(const Config& cfg, CommandResult& res) {
  const std::string path = cfg.get("out");
  if (path.empty() || path == "-") return;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write output file '" + path + "'");
  out << res.output;
  if (!out) throw IoError("failed writing output file '" + path + "'");
  res.output.clear();
}

CommandResult cmd_eval(const Config& cfg) {
  const ModelSetup setup = build_model(cfg);
  const auto ts = required_list(cfg, "t");
  const auto zs = required_list(cfg, "z");
  const SolutionMethod method = parse_method(cfg.get("method", "quad"));
  const auto n = static_cast<std::size_t>(cfg.get_int("n", 100000));
  const std::uint64_t seed = cfg.get_u64("seed", 1);
  SubordinatorModel model(setup.exponent, setup.quadrature);
  if (cfg.has("path_fraction")) model.set_path_fraction(cfg.get_double("path_fraction", 1e-3));

  const std::size_t rows = ts.size() * zs.size();
  std::vector<SolutionEstimate> out(rows);
  parallel_for(rows, [&](std::size_t i) {
    const double t = ts[i / zs.size()];
    const double z = zs[i % zs.size()];
    switch (method) {
      case SolutionMethod::Quadrature:
        out[i] = p_quadrature(setup.kernel, model, t, z, setup.quadrature);
        break;
      case SolutionMethod::MonteCarlo: {
        RngStream rng(seed, i);
        out[i] = p_monte_carlo(setup.kernel, model, t, z, n, rng);
        break;
      }
      case SolutionMethod::Fourier:
        out[i] = p_fourier_oracle(fourier_beta(setup.exponent), fourier_alpha(setup.kernel), 1, t, z);
        break;
    }
  });

  CommandResult res;
  std::ostringstream csv;
  csv << kCsvHeader << "\n" << "t,z,p,err,method\n";
  bool converged = true;
  for (std::size_t i = 0; i < rows; ++i) {
    csv << num(ts[i / zs.size()]) << "," << num(zs[i % zs.size()]) << "," << num(out[i].value) << ","
        << num(out[i].error) << "," << method_name(out[i].method) << "\n";
    converged = converged && out[i].converged;
  }
  res.output = csv.str();
  if (!converged) {
    res.exit_code = 3;
    res.message = "some evaluations did not reach the requested tolerance";
  }
  return res;
}

CommandResult cmd_estimate(const Config& cfg) {
  const ModelSetup setup = build_model(cfg);
  const auto ts = required_list(cfg, "t");
  const auto zs = required_list(cfg, "z");
  std::ostringstream csv;
  csv << kCsvHeader << "\n" << "t,z,regime,estimate,n\n";
  for (double t : ts) {
    for (double z : zs) {
      const EstimateResult e = estimate(setup.estimate_model, t, z, setup.quadrature);
      csv << num(t) << "," << num(z) << "," << regime_name(e.tag.regime) << "," << num(e.value) << "," << opt(e.n)
          << "\n";
    }
  }
  CommandResult res;
  res.output = csv.str();
  return res;
}

std::string summary_line(const char* name, const RegimeSummary& s) {
  std::ostringstream out;
  out << "# summary regime=" << name << " rows=" << s.rows;
  if (s.ratio_rows > 0) {
    out << " min_ratio=" << num(s.min_ratio) << " max_ratio=" << num(s.max_ratio) << " spread=" << num(s.spread());
  }
  if (s.log_ratio_rows > 0) {
    out << " min_log_ratio=" << num(s.min_log_ratio) << " max_log_ratio=" << num(s.max_log_ratio);
  }
  return out.str();
}

CommandResult cmd_verify(const Config& cfg) {
  const VerifyConfig vc = VerifyConfig::from(cfg);
  const SandwichReport rep = verify_sandwich(vc);
  CommandResult res;
  res.output = sandwich_csv(rep);
  std::vector<std::string> problems;
  if (rep.failures > 0) problems.push_back(std::to_string(rep.failures) + " rows failed");
  if (cfg.has("spread_max")) {
    const double lim = cfg.get_double("spread_max", 0.0);
    for (const auto* s : {&rep.near, &rep.off}) {
      if (s->ratio_rows > 0 && !(s->spread() < lim)) problems.push_back("ratio spread " + num(s->spread()) + " >= " + num(lim));
    }
  }
  if (cfg.has("off_spread_max")) {
    const double lim = cfg.get_double("off_spread_max", 0.0);
    if (rep.off.ratio_rows > 0 && !(rep.off.spread() < lim)) {
      problems.push_back("off-diagonal spread " + num(rep.off.spread()) + " >= " + num(lim));
    }
  }
  if (rep.off.log_ratio_rows > 0) {
    if (cfg.has("log_ratio_min") && rep.off.min_log_ratio < cfg.get_double("log_ratio_min", 0.0)) {
      problems.push_back("log ratio " + num(rep.off.min_log_ratio) + " below log_ratio_min");
    }
    if (cfg.has("log_ratio_max") && rep.off.max_log_ratio > cfg.get_double("log_ratio_max", 0.0)) {
      problems.push_back("log ratio " + num(rep.off.max_log_ratio) + " above log_ratio_max");
    }
  }
  std::ostringstream msg;
  msg << summary_line("near", rep.near).substr(2) << "\n" << summary_line("off", rep.off).substr(2) << "\n";
  for (const auto& p : problems) msg << "verification failure: " << p << "\n";
  res.message = msg.str();
  if (!problems.empty()) res.exit_code = 1;
  return res;
}

CommandResult cmd_sample(const Config& cfg) {
  const ModelSetup setup = build_model(cfg);
  const std::string what = cfg.get("what", "S");
  if (what != "S" && what != "E") throw UsageError("--what must be S or E");
  const double t = cfg.get_double("t", 1.0);
  if (!(t > 0.0)) throw UsageError("--t must be positive");
  const long long n = cfg.get_int("n", 1000);
  if (n < 1) throw UsageError("--n must be at least 1");
  const std::uint64_t seed = cfg.get_u64("seed", 1);
  SubordinatorModel model(setup.exponent, setup.quadrature);
  if (cfg.has("path_fraction")) model.set_path_fraction(cfg.get_double("path_fraction", 1e-3));

  // Fixed-size chunks with one stream each keep the draws independent of the
  // number of workers.
  constexpr std::size_t kChunk = 4096;
  const auto total = static_cast<std::size_t>(n);
  const std::size_t chunks = (total + kChunk - 1) / kChunk;
  std::vector<double> values(total);
  parallel_for(chunks, [&](std::size_t c) {
    RngStream rng(seed, c);
    const std::size_t end = std::min(total, (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) {
      values[i] = what == "S" ? model.sample_S(t, rng) : model.sample_E(t, rng);
    }
  });
  std::ostringstream csv;
  csv << kCsvHeader << "\n" << "index," << what << "\n";
  for (std::size_t i = 0; i < total; ++i) csv << i << "," << num(values[i]) << "\n";
  CommandResult res;
  res.output = csv.str();
  return res;
}

CommandResult cmd_residual(const Config& cfg) {
  const ModelSetup setup = build_model(cfg);
  const double beta = fourier_beta(setup.exponent);
  const double t_min = cfg.get_double("t_min", 0.2), t_max = cfg.get_double("t_max", 2.0);
  const long long t_points = cfg.get_int("t_points", 10);
  if (!(t_min > 0.0 && t_max >= t_min) || t_points < 1) throw UsageError("residual needs 0 < t_min <= t_max, t_points >= 1");
  WeakResidualGrid grid;
  grid.x_lo = cfg.get_double("x_min", -8.0);
  grid.x_hi = cfg.get_double("x_max", 8.0);
  grid.points = static_cast<int>(cfg.get_int("x_points", 257));
  const GaussianBump f{1.0, cfg.get_double("f_center", 0.0), cfg.get_double("f_variance", 0.5)};
  const GaussianBump g{1.0, cfg.get_double("g_center", 0.0), cfg.get_double("g_variance", 0.5)};
  if (!(f.variance > 0.0 && g.variance > 0.0)) throw UsageError("bump variances must be positive");
  const double tol = cfg.get_double("residual_tol", 0.05);
  const double t0 = cfg.get_double("t0", 1e-16);

  const auto ts = cfg.has("t") ? cfg.get_list("t") : lin_grid(t_min, t_max, static_cast<int>(t_points));
  for (double t : ts) {
    if (!(t > 0.0)) throw UsageError("residual times must be positive");
  }
  std::vector<WeakResidualReport> parts(ts.size());
  parallel_for(ts.size(), [&](std::size_t i) {
    parts[i] = caputo_weak_residual(beta, f, g, {ts[i]}, grid, setup.quadrature);
  });
  const double ic = initial_condition_error(beta, f, t0, grid, setup.quadrature);

  std::ostringstream csv;
  csv << kCsvHeader << "\n" << "t,lhs,rhs,residual,richardson\n";
  double worst = 0.0;
  std::vector<std::string> warnings;
  for (const auto& part : parts) {
    for (const auto& row : part.rows) {
      csv << num(row.t) << "," << num(row.lhs) << "," << num(row.rhs) << "," << num(row.residual) << ","
          << num(row.richardson) << "\n";
    }
    worst = std::max(worst, part.max_residual);
    warnings.insert(warnings.end(), part.warnings.begin(), part.warnings.end());
  }
  csv << "# max_residual=" << num(worst) << " initial_condition_error=" << num(ic) << "\n";
  CommandResult res;
  res.output = csv.str();
  std::ostringstream msg;
  for (const auto& w : warnings) msg << "warning: " << w << "\n";
  if (worst > tol) {
    res.exit_code = 1;
    msg << "verification failure: residual " << num(worst) << " exceeds " << num(tol) << "\n";
  }
  if (ic > 1e-6) {
    res.exit_code = 1;
    msg << "verification failure: u(t0) differs from f by " << num(ic) << "\n";
  }
  res.message = msg.str();
  return res;
}

CommandResult cmd_selftest() {
  const auto cases = run_selftest();
  CommandResult res;
  std::ostringstream out;
  int failed = 0;
  for (const auto& c : cases) {
    out << (c.pass ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) out << "  " << c.detail;
    out << "\n";
    if (!c.pass) ++failed;
  }
  out << (failed == 0 ? "selftest: all " + std::to_string(cases.size()) + " checks passed"
                      : "selftest: " + std::to_string(failed) + " of " + std::to_string(cases.size()) + " checks failed")
      << "\n";
  res.output = out.str();
  if (failed > 0) res.exit_code = 1;
  return res;
}

}  // namespace

LaplaceExponent parse_subordinator(const std::string& spec, const SpaceTimeScale& scale) {
  const auto [kind, args] = split_spec(spec);
  if (kind == "stable") return LaplaceExponent::stable(parse_double(args, "stable index"));
  if (kind == "mixture") {
    // WEIGHT,BETA;WEIGHT,BETA or WEIGHT@BETA,WEIGHT@BETA.
    std::vector<StableComponent> comps;
    const bool at_form = args.find('@') != std::string::npos;
    for (const auto& part : split(args, at_form ? ',' : ';')) {
      const std::size_t sep = part.find(at_form ? '@' : ',');
      if (sep == std::string::npos) throw UsageError("mixture components are written WEIGHT,BETA;WEIGHT,BETA");
      comps.push_back({parse_double(part.substr(0, sep), "mixture weight"), parse_double(part.substr(sep + 1), "mixture index")});
    }
    return LaplaceExponent::mixture(std::move(comps));
  }
  if (kind == "cbf") return LaplaceExponent::constructed(scale, parse_double(args, "alpha3"));
  throw UsageError("unknown subordinator '" + spec + "' (stable:B, mixture:W,B;W,B..., cbf:ALPHA3)");
}

SpaceTimeScale parse_scale(const std::string& spec) {
  const auto [kind, args] = split_spec(spec);
  if (kind == "power") return SpaceTimeScale::power(parse_double(args, "scale exponent"));
  if (kind == "power2") {
    const auto p = split(args, ',');
    if (p.size() != 3) throw UsageError("power2 takes A_LOW,A_HIGH,R_BREAK");
    return SpaceTimeScale::piecewise(parse_double(p[0], "scale"), parse_double(p[1], "scale"), parse_double(p[2], "scale"));
  }
  throw UsageError("unknown scale '" + spec + "' (power:A or power2:A_LOW,A_HIGH,R_BREAK)");
}

VolumeFunction parse_volume(const std::string& spec) {
  const auto [kind, args] = split_spec(spec);
  if (kind == "power") return VolumeFunction::power(parse_double(args, "volume exponent"));
  if (kind == "power2") {
    const auto p = split(args, ',');
    if (p.size() != 3) throw UsageError("power2 takes D_LOW,D_HIGH,R_BREAK");
    return VolumeFunction::piecewise(parse_double(p[0], "volume"), parse_double(p[1], "volume"), parse_double(p[2], "volume"));
  }
  throw UsageError("unknown volume '" + spec + "' (power:D or power2:D_LOW,D_HIGH,R_BREAK)");
}

SpatialKernel parse_kernel(const std::string& spec, const VolumeFunction& volume, const SpaceTimeScale& scale) {
  const auto [kind, args] = split_spec(spec);
  auto dim = [&](const std::string& a) {
    const double d = a.empty() ? 1.0 : parse_double(a, "kernel dimension");
    if (d != std::floor(d) || d < 1.0) throw UsageError("kernel dimension must be a positive integer");
    return static_cast<int>(d);
  };
  if (kind == "gaussian") return SpatialKernel::gaussian(dim(args));
  if (kind == "cauchy") return SpatialKernel::cauchy(dim(args));
  if (kind == "jump") return SpatialKernel::jump(volume, scale);
  if (kind == "diffusion") return SpatialKernel::diffusion(volume, scale);
  throw UsageError("unknown kernel '" + spec + "' (gaussian:D, cauchy:D, jump, diffusion)");
}

ModelSetup build_model(const Config& cfg) {
  const std::string kernel_spec = cfg.get("kernel", "gaussian:1");
  const std::string kernel_kind = split_spec(kernel_spec).first;
  std::string scale_spec = cfg.get("scale");
  std::string volume_spec = cfg.get("volume");
  if (kernel_kind == "gaussian" || kernel_kind == "cauchy") {
    const std::string d = split_spec(kernel_spec).second.empty() ? "1" : split_spec(kernel_spec).second;
    if (scale_spec.empty()) scale_spec = kernel_kind == "gaussian" ? "power:2" : "power:1";
    if (volume_spec.empty()) volume_spec = "power:" + d;
  }
  if (scale_spec.empty()) scale_spec = "power:2";
  if (volume_spec.empty()) volume_spec = "power:1";
  const SpaceTimeScale scale = parse_scale(scale_spec);
  const VolumeFunction volume = parse_volume(volume_spec);

  if (cfg.has("beta") && cfg.has("subordinator")) throw UsageError("give either --beta or --subordinator, not both");
  const std::string sub = cfg.has("beta") ? "stable:" + cfg.get("beta") : cfg.get("subordinator", "stable:0.5");

  QuadratureConfig quadrature;
  quadrature.rel_tol = cfg.get_double("rel_tol", quadrature.rel_tol);
  quadrature.validate();

  Flavor flavor = (kernel_kind == "cauchy" || kernel_kind == "jump") ? Flavor::Jump : Flavor::Diffusion;
  if (cfg.has("flavor")) {
    const std::string f = cfg.get("flavor");
    if (f == "jump") {
      flavor = Flavor::Jump;
    } else if (f == "diffusion") {
      flavor = Flavor::Diffusion;
    } else {
      throw UsageError("flavor must be jump or diffusion");
    }
  }
  LaplaceExponent exponent = parse_subordinator(sub, scale);
  SpatialKernel kernel = parse_kernel(kernel_spec, volume, scale);
  EstimateModel em{exponent, scale, volume, flavor};
  em.validate();
  return ModelSetup{std::move(exponent), std::move(kernel), std::move(em), quadrature};
}

VerifyConfig VerifyConfig::from(const Config& cfg) {
  VerifyConfig vc;
  vc.settings = cfg;
  vc.t_min = cfg.get_double("t_min", vc.t_min);
  vc.t_max = cfg.get_double("t_max", vc.t_max);
  vc.t_points = static_cast<int>(cfg.get_int("t_points", vc.t_points));
  vc.z_min = cfg.get_double("z_min", vc.z_min);
  vc.z_max = cfg.get_double("z_max", vc.z_max);
  vc.z_points = static_cast<int>(cfg.get_int("z_points", vc.z_points));
  vc.z_axis = cfg.get("z_axis", vc.z_axis);
  vc.method = parse_method(cfg.get("method", "quad"));
  vc.mc_samples = static_cast<std::size_t>(cfg.get_int("n", static_cast<long long>(vc.mc_samples)));
  vc.seed = cfg.get_u64("seed", vc.seed);
  if (!(vc.t_min > 0.0 && vc.t_max >= vc.t_min)) throw UsageError("t-range must satisfy 0 < t_min <= t_max");
  if (!(vc.z_min > 0.0 && vc.z_max >= vc.z_min)) throw UsageError("z-range must satisfy 0 < z_min <= z_max");
  // Zero points give an empty grid; otherwise both ends must be sampled.
  for (int p : {vc.t_points, vc.z_points}) {
    if (p < 0 || p == 1) throw UsageError("grid point counts must be 0 or at least 2");
  }
  if (vc.z_axis != "rho" && vc.z_axis != "abs") throw UsageError("z_axis must be rho or abs");
  if (vc.method == SolutionMethod::Fourier) throw UsageError("verify supports method quad or mc");
  if (vc.method == SolutionMethod::MonteCarlo && vc.mc_samples < 100) throw UsageError("--n must be at least 100");
  return vc;
}

SandwichReport verify_sandwich(const VerifyConfig& cfg) {
  const ModelSetup setup = build_model(cfg.settings);
  SubordinatorModel model(setup.exponent, setup.quadrature);
  if (cfg.settings.has("path_fraction")) model.set_path_fraction(cfg.settings.get_double("path_fraction", 1e-3));
  const auto ts = log_grid(cfg.t_min, cfg.t_max, cfg.t_points);
  const auto vs = log_grid(cfg.z_min, cfg.z_max, cfg.z_points);

  SandwichReport rep;
  rep.rows.resize(ts.size() * vs.size());
  parallel_for(rep.rows.size(), [&](std::size_t i) {
    SandwichRow& row = rep.rows[i];
    row.t = ts[i / vs.size()];
    row.method = cfg.method;
    try {
      const double phi1 = setup.exponent.value(1.0 / row.t);
      const double v = vs[i % vs.size()];
      row.z = cfg.z_axis == "abs" ? v : setup.estimate_model.scale.inverse(v / phi1);
      SolutionEstimate p;
      if (cfg.method == SolutionMethod::MonteCarlo) {
        RngStream rng(cfg.seed, i);
        p = p_monte_carlo(setup.kernel, model, row.t, row.z, cfg.mc_samples, rng);
      } else {
        p = p_quadrature(setup.kernel, model, row.t, row.z, setup.quadrature);
        if (!p.converged) row.failure = "quadrature did not converge";
      }
      row.p = p.value;
      row.p_err = p.error;
      const EstimateResult e = estimate(setup.estimate_model, row.t, row.z, setup.quadrature);
      row.tag = e.tag;
      row.estimate = e.value;
      row.n = e.n;
      if (e.n) {
        row.log_ratio = -std::log(p.value / e.value) / *e.n;
        if (!std::isfinite(*row.log_ratio) && row.failure.empty()) row.failure = "log ratio is not finite";
      } else {
        row.ratio = p.value / e.value;
        if (!(std::isfinite(*row.ratio) && *row.ratio > 0.0) && row.failure.empty()) {
          row.failure = "ratio is not finite and positive";
        }
      }
    } catch (const std::exception& ex) {
      row.failure = ex.what();
    }
  });

  for (const auto& row : rep.rows) {
    if (!row.failure.empty()) {
      ++rep.failures;
      continue;
    }
    RegimeSummary& s = row.tag.regime == Regime::NearDiagonal ? rep.near : rep.off;
    ++s.rows;
    if (row.ratio) {
      const double r = *row.ratio;
      if (s.ratio_rows++ == 0) {
        s.min_ratio = s.max_ratio = r;
      } else {
        s.min_ratio = std::min(s.min_ratio, r);
        s.max_ratio = std::max(s.max_ratio, r);
      }
    }
    if (row.log_ratio) {
      const double l = *row.log_ratio;
      if (s.log_ratio_rows++ == 0) {
        s.min_log_ratio = s.max_log_ratio = l;
      } else {
        s.min_log_ratio = std::min(s.min_log_ratio, l);
        s.max_log_ratio = std::max(s.max_log_ratio, l);
      }
    }
  }
  return rep;
}

std::string sandwich_csv(const SandwichReport& rep) {
  std::ostringstream csv;
  csv << kCsvHeader << "\n" << "t,z,regime,p,p_err,estimate,n,ratio,log_ratio,method\n";
  for (const auto& row : rep.rows) {
    csv << num(row.t) << "," << num(row.z) << ",";
    if (row.failure.empty()) {
      csv << regime_name(row.tag.regime) << "," << num(row.p) << "," << num(row.p_err) << "," << num(row.estimate)
          << "," << opt(row.n) << "," << opt(row.ratio) << "," << opt(row.log_ratio) << ","
          << method_name(row.method) << "\n";
    } else {
      csv << "failed,,,,,,," << method_name(row.method) << "\n";
    }
  }
  csv << summary_line("near", rep.near) << "\n" << summary_line("off", rep.off) << "\n";
  for (const auto& row : rep.rows) {
    if (!row.failure.empty()) csv << "# failure t=" << num(row.t) << " z=" << num(row.z) << ": " << row.failure << "\n";
  }
  return csv.str();
}

unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("FRACHEAT_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first;
  std::mutex mu;
  auto work = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!first) first = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  if (first) std::rethrow_exception(first);
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonConvergence:
    case ErrorKind::BracketFailure:
      return 3;
    case ErrorKind::Domain:
    case ErrorKind::UnsupportedModel:
    case ErrorKind::Usage:
    case ErrorKind::Io:
      return 2;
  }
  return 2;
}

CommandResult run_command(const std::string& command, const Config& cfg) {
  try {
    CommandResult res;
    if (command == "eval") {
      res = cmd_eval(cfg);
    } else if (command == "estimate") {
      res = cmd_estimate(cfg);
    } else if (command == "verify") {
      res = cmd_verify(cfg);
    } else if (command == "sample") {
      res = cmd_sample(cfg);
    } else if (command == "residual") {
      res = cmd_residual(cfg);
    } else if (command == "selftest") {
      res = cmd_selftest();
    } else {
      throw UsageError("unknown command '" + command + "'");
    }
    write_output(cfg, res);
    return res;
  } catch (const Error& e) {
    CommandResult res;
    res.exit_code = exit_code_for(e.kind());
    res.message = std::string("error: ") + e.what() + "\n";
    return res;
  } catch (const std::exception& e) {
    CommandResult res;
    res.exit_code = 3;
    res.message = std::string("error: ") + e.what() + "\n";
    return res;
  }
}

}  // namespace fracheat
