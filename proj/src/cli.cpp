#include "nbmaj/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nbmaj/errors.hpp"
#include "nbmaj/majorants.hpp"
#include "nbmaj/system.hpp"
#include "nbmaj/validation.hpp"

namespace nbmaj::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string label(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct Global {
  std::string out;
  std::optional<double> tol;
  int order = kDefaultOrder;
  std::uint64_t seed = 20240601;
};

std::optional<fs::path> out_dir(const Global& g) {
  if (!g.out.empty()) return fs::path(g.out);
  if (const char* env = std::getenv(kOutDirEnv); env && *env) return fs::path(env);
  return std::nullopt;
}

class Outputs {
 public:
  Outputs(std::string command, std::optional<fs::path> dir)
      : command_(std::move(command)), dir_(std::move(dir)), start_(std::chrono::steady_clock::now()) {
    if (dir_) fs::create_directories(*dir_);
  }

  bool has_dir() const { return dir_.has_value(); }

  // Writes the file when an output directory is set; otherwise prints to stdout if echo.
  void write(const std::string& name, const std::string& content, bool echo) {
    if (dir_) {
      const fs::path p = *dir_ / name;
      std::ofstream f(p, std::ios::binary);
      if (!f) throw InvalidParameters("cannot write " + p.string());
      f << content;
      files_.push_back(p.string());
    }
    if (echo || !dir_) std::cout << content;
  }

  void manifest(const json& config, const UnitSystem& units) {
    if (!dir_) return;
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    json m{{"command", command_},
           {"config", config},
           {"library_version", kVersion},
           {"units", {{"length", units.length}, {"time", units.time}, {"mass", units.mass},
                      {"G", units.G}}},
           {"outputs", files_},
           {"wall_clock_seconds", seconds}};
    std::ofstream f(*dir_ / "manifest.json", std::ios::binary);
    f << m.dump(2) << "\n";
  }

 private:
  std::string command_;
  std::optional<fs::path> dir_;
  std::chrono::steady_clock::time_point start_;
  std::vector<std::string> files_;
};

// ---------------------------------------------------------------------------
// radii

struct RadiiOptions {
  std::vector<double> eta{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
};

int cmd_radii(const Global& g, const RadiiOptions& o) {
  const double tol = g.tol.value_or(1e-10);
  std::ostringstream csv;
  csv << "name,value,tolerance,expected\n";
  auto row = [&](const std::string& name, double v, double t, std::optional<double> expected) {
    csv << name << "," << num(v) << "," << num(t) << "," << (expected ? num(*expected) : "")
        << "\n";
  };
  bool ok = true;
  std::ostringstream problems;
  for (double eta : o.eta) {
    const double r = radius_r(eta, tol);
    const double rh = radius_r_hat_old(eta);
    row("r(" + label(eta) + ")", r, 1e-7,
        eta == 0.5 ? std::optional<double>(0.42812819) : std::nullopt);
    row("r_hat(" + label(eta) + ")", rh, 1e-7,
        eta == 0.5 ? std::optional<double>(0.25796556) : std::nullopt);
    if (rh > r) {
      ok = false;
      problems << "r_hat(" << eta << ") exceeds r(" << eta << ")\n";
    }
  }
  row("r(1-1e-8)", radius_r(1.0 - 1e-8, tol), 1e-6, std::sqrt(2.0) - 1.0);
  const FlowRadius fr = radius_R(std::min(tol, 1e-14));
  row("R", fr.R, 1e-12, 0.0839968103939379);
  row("vplus_root", fr.vplus, 1e-12, 0.149902575567304);
  row("vplus_closed_form", fr.vplus_closed_form, 1e-12, 0.149902575567304);
  if (!fr.closed_form_agrees) {
    ok = false;
    problems << "closed form and root of v+ differ by more than 1e-12\n";
  }
  const MidpointRadius mr = midpoint_radius_hat();
  row("R_hat", mr.fold, 1e-4 * mr.fold, 0.094790093);
  row("R_hat_domb_sykes", mr.domb_sykes, 1e-3 * mr.fold, 0.094790093);
  if (!mr.agree) {
    ok = false;
    problems << "fold and coefficient-ratio estimates of R_hat differ by more than 1e-3\n";
  }
  if (!(mr.fold > fr.R)) {
    ok = false;
    problems << "R_hat does not exceed R\n";
  }
  Outputs out("radii", out_dir(g));
  out.write("radii.csv", csv.str(), true);
  out.manifest({{"eta", o.eta}, {"tol", tol}}, nbody_units());
  std::cerr << problems.str();
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// series

struct SeriesOptions {
  std::string which = "xi-zeta";
  double mu0 = 1.0;
  double nu0 = 1.0;
  double eta0 = 0.5;
  int p = 1;
  double alpha = 1.0;
};

double max_diff(const TruncatedSeries& a, const TruncatedSeries& b) {
  double d = 0.0;
  for (int k = 0; k <= a.order(); ++k) {
    d = std::max(d, std::abs(a[k] - b[k]) / std::max(1.0, std::abs(b[k])));
  }
  return d;
}

int cmd_series(const Global& g, const SeriesOptions& o) {
  const int K = g.order;
  std::ostringstream csv;
  csv << "series,degree,coefficient\n";
  auto dump = [&](const std::string& name, const TruncatedSeries& s) {
    for (int k = 0; k <= s.order(); ++k) csv << name << "," << k << "," << num(s[k]) << "\n";
  };
  std::vector<std::pair<std::string, double>> checks;
  const double tol = g.tol.value_or(1e-10);
  RenormShape shape;
  shape.p = o.p;
  shape.alpha = o.alpha;
  if (o.which == "rho") {
    const PhysicalMajorant m = rho_series(o.mu0, o.nu0, K);
    dump("rho", m.rho);
    checks.emplace_back("recurrence_difference", max_diff(m.rho, rho_series_recurrence(o.mu0, o.nu0, K)));
  } else if (o.which == "lambda") {
    dump("lambda", lambda_series(o.eta0, K));
  } else if (o.which == "xi-zeta") {
    const RenormMajorant m = xi_zeta_series(K, shape);
    dump("xi", m.xi);
    dump("zeta", m.zeta);
    const auto [xr, zr] = xi_zeta_recurrence(K, shape);
    checks.emplace_back("recurrence_difference", std::max(max_diff(m.xi, xr), max_diff(m.zeta, zr)));
    if (shape.is_original()) {
      const IdentityResiduals r = flow_identity_residuals(m);
      checks.emplace_back("gamma_relation_residual", r.gamma_relation);
      checks.emplace_back("xi_aux_residual", r.xi_aux);
    }
  } else if (o.which == "midpoint") {
    const RenormMajorant m = midpoint_xi_zeta_hat(K, shape);
    dump("xi_hat", m.xi);
    dump("zeta_hat", m.zeta);
    const auto [xr, zr] = xi_zeta_recurrence(K, shape, 0.5);
    checks.emplace_back("recurrence_difference", std::max(max_diff(m.xi, xr), max_diff(m.zeta, zr)));
    if (shape.is_original()) checks.emplace_back("zeta_hat_relation_residual", midpoint_relation_residual(m));
  } else {
    throw InvalidParameters("unknown series '" + o.which + "'");
  }
  bool ok = true;
  for (const auto& [name, value] : checks) {
    csv << "check," << name << "," << num(value) << "\n";
    ok = ok && value <= tol;
  }
  Outputs out("series", out_dir(g));
  out.write("series_" + o.which + ".csv", csv.str(), !out.has_dir());
  out.manifest({{"which", o.which}, {"order", K}, {"mu0", o.mu0}, {"nu0", o.nu0},
                {"eta0", o.eta0}, {"p", o.p}, {"alpha", o.alpha}, {"tol", tol}},
               nbody_units());
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// integrate / compare

struct RunOptions {
  std::string system = "two-body-circular";
  std::string renorm = "original";
  int p = 2;
  double alpha = 3.0;
  int stages = 1;
  double step = 0.0;
  int steps = 100;
  double fp_tol = 1e-14;
  int fp_maxiter = 100;
  std::string predictor = "zeroth";
  bool certify = false;
  std::string probe = "none";
  std::string reference = "substep";
  int substeps = 16;
};

RenormSpec make_spec(const std::string& kind, int p, double alpha, const SystemState& s) {
  switch (renorm_kind_from_string(kind)) {
    case RenormKind::Physical: return RenormSpec::physical();
    case RenormKind::Original: return RenormSpec::original();
    case RenormKind::Cheap: return RenormSpec::cheap();
    case RenormKind::PNorm: return RenormSpec::pnorm(p, alpha);
    case RenormKind::Energy: return RenormSpec::energy(s, p, alpha);
  }
  return {};
}

IntegrationConfig make_config(const RunOptions& o, const RenormSpec& spec, double step) {
  IntegrationConfig cfg;
  cfg.tableau = gauss_tableau(o.stages);
  cfg.step = step;
  cfg.nsteps = o.steps;
  cfg.fp_tol = o.fp_tol;
  cfg.fp_maxiter = o.fp_maxiter;
  if (o.predictor == "euler") {
    cfg.predictor = Predictor::Euler;
  } else if (o.predictor != "zeroth") {
    throw InvalidParameters("unknown predictor '" + o.predictor + "'");
  }
  cfg.renorm = spec;
  cfg.certify = o.certify;
  return cfg;
}

json config_json(const RunOptions& o, const RenormSpec& spec, double step) {
  return {{"system", o.system}, {"renorm", to_string(spec.kind)}, {"p", spec.p},
          {"alpha", spec.alpha}, {"E0", spec.E0}, {"stages", o.stages}, {"step", step},
          {"steps", o.steps}, {"fp_tol", o.fp_tol}, {"fp_maxiter", o.fp_maxiter},
          {"predictor", o.predictor}, {"certify", o.certify}, {"probe", o.probe},
          {"reference", o.reference}, {"substeps", o.substeps}};
}

std::string trajectory_csv(const Trajectory& t, const std::vector<ProbeRow>* local) {
  std::ostringstream csv;
  csv << "step,tau,t_phys,body,qx,qy,qz,vx,vy,vz,fp_iters,local_err,cert_bound\n";
  for (std::size_t k = 0; k < t.records.size(); ++k) {
    const StepRecord& r = t.records[k];
    for (std::size_t i = 0; i < r.state.size(); ++i) {
      csv << r.index << "," << num(r.tau) << "," << num(r.t_phys) << ","
          << (r.state.names.empty() ? std::to_string(i) : r.state.names[i]);
      for (int c = 0; c < 3; ++c) csv << "," << num(r.state.q[i][c]);
      for (int c = 0; c < 3; ++c) csv << "," << num(r.state.v[i][c]);
      csv << "," << r.fp_iters << ",";
      if (local && k >= 1 && k - 1 < local->size()) csv << num((*local)[k - 1].pos_err[i]);
      csv << ",";
      if (i < r.cert_bound.size()) csv << num(r.cert_bound[i]);
      csv << "\n";
    }
  }
  return csv.str();
}

std::string probe_csv(const std::vector<ProbeRow>& rows) {
  std::ostringstream csv;
  csv << "step,tau,t_phys,body,pos_err,vel_err,cert_bound\n";
  for (const ProbeRow& r : rows) {
    for (std::size_t i = 0; i < r.pos_err.size(); ++i) {
      csv << r.step << "," << num(r.tau) << "," << num(r.t_phys) << "," << i << ","
          << num(r.pos_err[i]) << "," << num(r.vel_err[i]) << ",";
      if (i < r.cert_pos.size()) csv << num(r.cert_pos[i]);
      csv << "\n";
    }
  }
  return csv.str();
}

ProbeOptions probe_options(const RunOptions& o, ProbeMode mode, const RenormSpec& spec,
                           std::size_t bodies) {
  ProbeOptions p;
  p.mode = mode;
  p.substeps = o.substeps;
  if (o.reference == "kepler") {
    p.reference = ReferenceKind::Kepler;
  } else if (o.reference == "auto") {
    const bool kepler = bodies == 2 && (mode == ProbeMode::Global || spec.kind == RenormKind::Physical);
    p.reference = kepler ? ReferenceKind::Kepler : ReferenceKind::Substep;
  } else if (o.reference != "substep") {
    throw InvalidParameters("unknown reference '" + o.reference + "'");
  }
  return p;
}

int cmd_integrate(const Global& g, const RunOptions& o) {
  const SystemState state = load_system(o.system);
  const RenormSpec spec = make_spec(o.renorm, o.p, o.alpha, state);
  const IntegrationConfig cfg = make_config(o, spec, o.step);
  Outputs out("integrate", out_dir(g).value_or(fs::path(".")));
  Trajectory traj;
  std::optional<ProbeResult> probe;
  if (o.probe == "none") {
    traj = integrate(state, cfg);
  } else {
    const ProbeMode mode = o.probe == "global" ? ProbeMode::Global : ProbeMode::Local;
    if (o.probe != "local" && o.probe != "global") {
      throw InvalidParameters("unknown probe '" + o.probe + "'");
    }
    probe = error_probe(state, cfg, probe_options(o, mode, spec, state.size()));
    traj = probe->trajectory;
  }
  out.write("trajectory.csv", trajectory_csv(traj, probe ? &probe->rows : nullptr), false);
  if (probe) out.write("errors_" + o.probe + ".csv", probe_csv(probe->rows), false);
  out.manifest(config_json(o, spec, o.step), state.units);
  std::cout << "steps completed: " << traj.records.size() - 1 << " of " << o.steps << "\n";
  if (!traj.complete) {
    std::cerr << "integration stopped: " << traj.error << "\n";
    return 2;
  }
  return 0;
}

struct CompareOptions {
  RunOptions run;
  std::optional<double> dt;
  std::optional<double> dtau;
  std::string probe = "local";
};

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const std::size_t m = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(m), v.end());
  double hi = v[m];
  if (v.size() % 2 == 1) return hi;
  const double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(m));
  return 0.5 * (lo + hi);
}

std::string summary_csv(const std::vector<CompareSummary>& rows) {
  std::ostringstream csv;
  csv << "run,body,steps,max_local_err,median_local_err,max_over_median,spikes\n";
  for (const auto& r : rows) {
    csv << r.run << "," << r.body << "," << r.steps << "," << num(r.max_err) << ","
        << num(r.median_err) << "," << num(r.max_over_median) << "," << r.spikes << "\n";
  }
  return csv.str();
}

int cmd_compare(const Global& g, const CompareOptions& co) {
  const SystemState state = load_system(co.run.system);
  const RenormSpec phys = RenormSpec::physical();
  RunOptions ro = co.run;
  if (ro.renorm == "physical") throw InvalidParameters("compare needs a renormalized kind");
  const RenormSpec ren = make_spec(ro.renorm, ro.p, ro.alpha, state);
  // Equal step counts; default step sizes cover one orbit of a two-body state.
  double dt = 0.0;
  double dtau = 0.0;
  if (co.dt && co.dtau) {
    dt = *co.dt;
    dtau = *co.dtau;
  } else if (state.size() == 2) {
    dt = co.dt.value_or(two_body_period(state) / ro.steps);
    dtau = co.dtau.value_or(tau_per_orbit(state, ren) / ro.steps);
  } else {
    throw InvalidParameters("compare needs --dt and --dtau for systems other than two bodies");
  }
  const IntegrationConfig pc = make_config(ro, phys, dt);
  const IntegrationConfig rc = make_config(ro, ren, dtau);
  Outputs out("compare", out_dir(g).value_or(fs::path(".")));
  std::vector<CompareSummary> summary;
  bool complete = true;
  std::string error;
  for (const auto& [name, cfg] : {std::pair{std::string("physical"), pc},
                                  std::pair{std::string("renormalized"), rc}}) {
    const RenormSpec& spec = cfg.renorm;
    Trajectory traj;
    if (co.probe == "none") {
      traj = integrate(state, cfg);
    } else {
      if (co.probe == "local" || co.probe == "both") {
        const ProbeResult p =
            error_probe(state, cfg, probe_options(ro, ProbeMode::Local, spec, state.size()));
        traj = p.trajectory;
        out.write(name + "_local.csv", probe_csv(p.rows), false);
        const auto s = summarize(name, p);
        summary.insert(summary.end(), s.begin(), s.end());
        out.write(name + "_trajectory.csv", trajectory_csv(traj, &p.rows), false);
      }
      if (co.probe == "global" || co.probe == "both") {
        const ProbeResult p =
            error_probe(state, cfg, probe_options(ro, ProbeMode::Global, spec, state.size()));
        out.write(name + "_global.csv", probe_csv(p.rows), false);
        if (co.probe == "global") {
          traj = p.trajectory;
          out.write(name + "_trajectory.csv", trajectory_csv(traj, nullptr), false);
        }
      }
      if (co.probe != "local" && co.probe != "global" && co.probe != "both") {
        throw InvalidParameters("unknown probe '" + co.probe + "'");
      }
    }
    if (co.probe == "none") out.write(name + "_trajectory.csv", trajectory_csv(traj, nullptr), false);
    if (!traj.complete) {
      complete = false;
      error += name + ": " + traj.error + "\n";
    }
  }
  if (!summary.empty()) out.write("summary.csv", summary_csv(summary), true);
  json cfg = config_json(ro, ren, dtau);
  cfg["dt"] = dt;
  cfg["dtau"] = dtau;
  cfg["probe"] = co.probe;
  out.manifest(cfg, state.units);
  if (!complete) {
    std::cerr << "integration stopped:\n" << error;
    return 2;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// validate-bounds

struct ValidateOptions {
  int count = 100;
  int taylor_order = 10;
};

int cmd_validate(const Global& g, const ValidateOptions& o) {
  std::mt19937_64 rng(g.seed);
  std::ostringstream csv;
  csv << "trial,bodies,family,kind,check,i,j,holds,worst_excess\n";
  int violations = 0;
  int checks = 0;
  auto record = [&](int trial, std::size_t n, const std::string& family, const std::string& kind,
                    const DominanceSummary& s) {
    for (const auto& c : s.checks) {
      ++checks;
      if (!c.report.holds) ++violations;
      csv << trial << "," << n << "," << family << "," << kind << "," << c.name << "," << c.i
          << "," << c.j << "," << (c.report.holds ? 1 : 0) << "," << num(c.report.worst_excess)
          << "\n";
    }
  };
  const int K = o.taylor_order;
  for (int t = 0; t < o.count; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 2);
    const SystemState s = random_state(rng, n);
    record(t, n, "physical", "physical", check_physical_dominance(s, K));
    for (const char* kind : {"original", "cheap", "pnorm", "energy"}) {
      const RenormSpec spec = make_spec(kind, 2, 3.0, s);
      record(t, n, "flow", kind, check_renorm_dominance(s, spec, K));
      record(t, n, "midpoint", kind, check_rk_dominance(s, spec, gauss_tableau(1), K));
    }
  }
  Outputs out("validate-bounds", out_dir(g).value_or(fs::path(".")));
  out.write("dominance.csv", csv.str(), false);
  out.manifest({{"count", o.count}, {"taylor_order", K}, {"seed", g.seed}}, nbody_units());
  std::cout << "dominance checks: " << checks << ", violations: " << violations << "\n";
  return violations == 0 ? 0 : 1;
}

}  // namespace

std::vector<CompareSummary> summarize(const std::string& run, const ProbeResult& probe) {
  std::vector<CompareSummary> out;
  if (probe.rows.empty()) return out;
  const std::size_t n = probe.rows.front().pos_err.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> e;
    e.reserve(probe.rows.size());
    for (const auto& r : probe.rows) e.push_back(r.pos_err[i]);
    CompareSummary s;
    s.run = run;
    s.body = i;
    s.steps = e.size();
    s.max_err = *std::max_element(e.begin(), e.end());
    s.median_err = median(e);
    s.max_over_median = s.median_err > 0.0 ? s.max_err / s.median_err
                                           : std::numeric_limits<double>::infinity();
    s.spikes = static_cast<int>(
        std::count_if(e.begin(), e.end(), [&](double x) { return x > 10.0 * s.median_err; }));
    out.push_back(s);
  }
  return out;
}

int run(int argc, const char* const* argv) {
  CLI::App app{"Majorant series and time-renormalized integration for the N-body problem", "nbmaj"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--out", g.out, "output directory (default: $" + std::string(kOutDirEnv) + ")");
  app.add_option("--tol", g.tol, "tolerance for quadratures and checks");
  app.add_option("--order", g.order, "truncation order K")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", g.seed, "seed for randomized sweeps");
  app.set_version_flag("--version", kVersion);

  RadiiOptions ro;
  auto* radii = app.add_subcommand("radii", "convergence radii r, r_hat, R, v+, R_hat");
  radii->add_option("--eta", ro.eta, "eta0 grid")->delimiter(',');

  SeriesOptions so;
  auto* series = app.add_subcommand("series", "majorant series coefficients");
  series->add_option("--which", so.which, "rho | lambda | xi-zeta | midpoint")
      ->check(CLI::IsMember({"rho", "lambda", "xi-zeta", "midpoint"}));
  series->add_option("--mu0", so.mu0, "mu0 for rho");
  series->add_option("--nu0", so.nu0, "nu0 for rho");
  series->add_option("--eta0", so.eta0, "eta0 for lambda");
  series->add_option("--p", so.p, "renormalization exponent p of the majorant system");
  series->add_option("--alpha", so.alpha, "renormalization alpha of the majorant system");

  auto add_run = [](CLI::App* c, RunOptions& r) {
    c->add_option("--system", r.system, "preset name or system JSON file");
    c->add_option("--renorm", r.renorm, "physical | original | cheap | pnorm | energy");
    c->add_option("--p", r.p, "p for pnorm/energy");
    c->add_option("--alpha", r.alpha, "alpha for pnorm/energy");
    c->add_option("--stages", r.stages, "Gauss-Legendre stages (1 = implicit midpoint)")
        ->check(CLI::Range(1, 8));
    c->add_option("--steps", r.steps, "number of steps")->check(CLI::NonNegativeNumber);
    c->add_option("--fp-tol", r.fp_tol, "fixed-point tolerance");
    c->add_option("--fp-maxiter", r.fp_maxiter, "fixed-point iteration limit");
    c->add_option("--predictor", r.predictor, "zeroth | euler");
    c->add_option("--reference", r.reference, "substep | kepler | auto");
    c->add_option("--substeps", r.substeps, "substeps of the reference solution");
  };

  RunOptions io;
  auto* integ = app.add_subcommand("integrate", "fixed-step integration");
  add_run(integ, io);
  integ->add_option("--step", io.step, "step size (tau, or t for physical)")->required();
  integ->add_flag("--certify", io.certify, "attach the majorant local-error certificate");
  integ->add_option("--probe", io.probe, "none | local | global");

  CompareOptions co;
  co.run.system = "two-body-e099";
  co.run.renorm = "pnorm";
  co.run.steps = 2000;
  co.run.reference = "auto";
  auto* cmp = app.add_subcommand("compare", "physical vs renormalized integration, equal step counts");
  add_run(cmp, co.run);
  cmp->add_option("--dt", co.dt, "physical step size");
  cmp->add_option("--dtau", co.dtau, "fictitious step size");
  cmp->add_option("--probe", co.probe, "local | global | both | none");

  ValidateOptions vo;
  auto* val = app.add_subcommand("validate-bounds", "randomized majorant dominance sweep");
  val->add_option("--count", vo.count, "number of random states");
  val->add_option("--taylor-order", vo.taylor_order, "order of the Taylor expansions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  try {
    if (*radii) return cmd_radii(g, ro);
    if (*series) return cmd_series(g, so);
    if (*integ) return cmd_integrate(g, io);
    if (*cmp) return cmd_compare(g, co);
    if (*val) return cmd_validate(g, vo);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("nbmaj");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace nbmaj::cli
