#include "nbmaj/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nbmaj/errors.hpp"
#include "nbmaj/majorants.hpp"
#include "nbmaj/system.hpp"

namespace nbmaj {

IrkResult irk_solve(const VectorField& f, std::span<const double> y0, const RKTableau& tab,
                    double h, const FixedPointOptions& opt) {
  const std::size_t n = y0.size();
  const int S = tab.stages;
  std::vector<std::vector<double>> Y(S, std::vector<double>(y0.begin(), y0.end()));
  std::vector<std::vector<double>> F(S, std::vector<double>(n, 0.0));
  if (opt.predictor == Predictor::Euler) {
    std::vector<double> f0(n);
    f(y0, f0);
    for (int l = 0; l < S; ++l) {
      for (std::size_t c = 0; c < n; ++c) Y[l][c] = y0[c] + tab.c[l] * h * f0[c];
    }
  }

  constexpr double kEps = std::numeric_limits<double>::epsilon();
  double best = std::numeric_limits<double>::infinity();
  double residual = best;
  int stalled = 0;
  int it = 0;
  bool done = false;
  while (!done) {
    if (it >= opt.max_iter) {
      throw NonConvergence("fixed-point iteration exceeded " + std::to_string(opt.max_iter) +
                               " sweeps",
                           residual, it);
    }
    ++it;
    for (int l = 0; l < S; ++l) f(Y[l], F[l]);
    residual = 0.0;
    for (int l = 0; l < S; ++l) {
      for (std::size_t c = 0; c < n; ++c) {
        double acc = 0.0;
        for (int m = 0; m < S; ++m) acc += tab.a(l, m) * F[m][c];
        const double next = y0[c] + h * acc;
        residual = std::max(residual, std::abs(next - Y[l][c]) / (1.0 + std::abs(next)));
        Y[l][c] = next;
      }
    }
    if (residual < opt.tol) {
      done = true;
    } else if (residual < best) {
      best = residual;
      stalled = 0;
    } else if (++stalled >= 3) {
      // Roundoff floor: accept if the iteration got close enough.
      if (best < 1e3 * kEps) {
        done = true;
      } else {
        throw NonConvergence("fixed-point iteration stagnated", best, it);
      }
    }
  }
  IrkResult out;
  out.y.assign(y0.begin(), y0.end());
  for (int l = 0; l < S; ++l) f(Y[l], F[l]);
  for (std::size_t c = 0; c < n; ++c) {
    double acc = 0.0;
    for (int l = 0; l < S; ++l) acc += tab.b[l] * F[l][c];
    out.y[c] += h * acc;
  }
  out.stages = std::move(Y);
  out.iterations = it;
  out.residual = residual;
  return out;
}

void IntegrationConfig::validate() const {
  if (tableau.stages < 1) throw InvalidParameters("integration needs a tableau");
  if (!(step != 0.0) || !std::isfinite(step)) throw InvalidParameters("step must be nonzero");
  if (nsteps < 0) throw InvalidParameters("nsteps must be nonnegative");
  if (!(fp_tol > 0.0)) throw InvalidParameters("fp_tol must be positive");
  if (fp_maxiter < 1) throw InvalidParameters("fp_maxiter must be positive");
  renorm.validate();
}

VectorField nbody_field(const SystemState& shape, const RenormSpec& spec) {
  return [state = shape, spec](std::span<const double> y, std::span<double> dy) mutable {
    unpack(y, state);
    const StateDerivative d = rhs(state, spec);
    const std::size_t n = state.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (int c = 0; c < 3; ++c) {
        dy[3 * i + c] = d.dq[i][c];
        dy[3 * n + 3 * i + c] = d.dv[i][c];
      }
    }
    dy[6 * n] = d.dt;
  };
}

StepResult irk_step(const SystemState& state, const IntegrationConfig& cfg, int index, double tau) {
  const std::vector<double> y0 = pack(state);
  const IrkResult r =
      irk_solve(nbody_field(state, cfg.renorm), y0, cfg.tableau, cfg.step, cfg.fixed_point());
  StepResult out;
  out.state = state;
  unpack(r.y, out.state);
  out.record.index = index;
  out.record.tau = tau + cfg.step;
  out.record.t_phys = out.state.t_phys;
  out.record.state = out.state;
  out.record.fp_iters = r.iterations;
  return out;
}

namespace {

class Certifier {
 public:
  explicit Certifier(const IntegrationConfig& cfg) : cfg_(cfg) {}

  std::vector<double> bound(const SystemState& start) {
    const std::size_t n = start.size();
    std::vector<double> out(n, std::numeric_limits<double>::quiet_NaN());
    if (cfg_.renorm.kind == RenormKind::Physical) return out;
    const RenormShape shape = RenormShape::from(cfg_.renorm, start);
    if (!flow_ || shape.energy_ratio != flow_->shape.energy_ratio) {
      flow_ = xi_zeta_series(cfg_.certify_order, shape);
      disc_ = midpoint_xi_zeta_hat(cfg_.certify_order, shape);
    }
    const BoundScalings sc = BoundScalings::from_state(start, cfg_.renorm);
    for (std::size_t i = 0; i < n; ++i) {
      try {
        out[i] = rk_local_error_bound(sc, *flow_, *disc_, cfg_.tableau, i, cfg_.step).pos.safeguarded;
      } catch (const OutOfDomain&) {
      }
    }
    return out;
  }

 private:
  const IntegrationConfig& cfg_;
  std::optional<RenormMajorant> flow_;
  std::optional<RenormMajorant> disc_;
};

}  // namespace

Trajectory integrate(const SystemState& state, const IntegrationConfig& cfg) {
  cfg.validate();
  state.validate();
  Trajectory traj;
  StepRecord first;
  first.t_phys = state.t_phys;
  first.state = state;
  traj.records.push_back(first);
  Certifier cert(cfg);
  SystemState current = state;
  double tau = 0.0;
  for (int k = 1; k <= cfg.nsteps; ++k) {
    try {
      StepResult r = irk_step(current, cfg, k, tau);
      if (cfg.certify) r.record.cert_bound = cert.bound(current);
      current = r.state;
      tau = r.record.tau;
      traj.records.push_back(std::move(r.record));
    } catch (const Error& e) {
      traj.complete = false;
      traj.error = "step " + std::to_string(k) + ": " + e.what();
      break;
    }
  }
  return traj;
}

namespace {

SystemState substep_reference(const SystemState& start, const IntegrationConfig& cfg,
                              const ProbeOptions& opt) {
  IntegrationConfig ref = cfg;
  ref.step = cfg.step / opt.substeps;
  ref.fp_tol = opt.reference_fp_tol;
  ref.fp_maxiter = std::max(cfg.fp_maxiter, 200);
  if (opt.reference_tableau) ref.tableau = *opt.reference_tableau;
  SystemState s = start;
  for (int k = 0; k < opt.substeps; ++k) s = irk_step(s, ref).state;
  return s;
}

void compare(const SystemState& num, const SystemState& ref, ProbeRow& row) {
  const std::size_t n = num.size();
  row.pos_err.resize(n);
  row.vel_err.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    row.pos_err[i] = norm(num.q[i] - ref.q[i]);
    row.vel_err[i] = norm(num.v[i] - ref.v[i]);
  }
}

struct DenseSample {
  double t;
  std::vector<Vec3> q, v, a;
};

DenseSample sample_of(const SystemState& s) {
  return {s.t_phys, s.q, s.v, accelerations(s)};
}

// Cubic Hermite interpolation in physical time using dq/dt = v and dv/dt = g.
SystemState hermite(const std::vector<DenseSample>& ref, const SystemState& like, double t) {
  // Reference times are monotone in the direction of integration.
  const bool forward = ref.back().t >= ref.front().t;
  auto before = [forward](const DenseSample& s, double x) { return forward ? s.t < x : s.t > x; };
  auto it = std::lower_bound(ref.begin(), ref.end(), t, before);
  std::size_t k = static_cast<std::size_t>(it - ref.begin());
  k = std::clamp<std::size_t>(k, 1, ref.size() - 1);
  const DenseSample& a = ref[k - 1];
  const DenseSample& b = ref[k];
  const double dt = b.t - a.t;
  const double th = (t - a.t) / dt;
  const double h00 = (2 * th - 3) * th * th + 1;
  const double h10 = ((th - 2) * th + 1) * th;
  const double h01 = (3 - 2 * th) * th * th;
  const double h11 = (th - 1) * th * th;
  SystemState s = like;
  for (std::size_t i = 0; i < like.size(); ++i) {
    s.q[i] = h00 * a.q[i] + (h10 * dt) * a.v[i] + h01 * b.q[i] + (h11 * dt) * b.v[i];
    s.v[i] = h00 * a.v[i] + (h10 * dt) * a.a[i] + h01 * b.v[i] + (h11 * dt) * b.a[i];
  }
  s.t_phys = t;
  return s;
}

}  // namespace

ProbeResult error_probe(const SystemState& state, const IntegrationConfig& cfg,
                        const ProbeOptions& opt) {
  if (opt.substeps < 1) throw InvalidParameters("reference needs at least one substep");
  if (opt.reference == ReferenceKind::Kepler && state.size() != 2) {
    throw InvalidParameters("the Kepler reference needs a two-body state");
  }
  if (opt.reference == ReferenceKind::Kepler && opt.mode == ProbeMode::Local &&
      cfg.renorm.kind != RenormKind::Physical) {
    throw InvalidParameters("the local Kepler reference applies to physical-time steps only");
  }
  ProbeResult out;
  out.trajectory = integrate(state, cfg);
  const auto& recs = out.trajectory.records;

  if (opt.mode == ProbeMode::Local) {
    for (std::size_t k = 1; k < recs.size(); ++k) {
      const SystemState& start = recs[k - 1].state;
      const SystemState ref = opt.reference == ReferenceKind::Kepler
                                  ? kepler_propagate(start, cfg.step)
                                  : substep_reference(start, cfg, opt);
      ProbeRow row;
      row.step = recs[k].index;
      row.tau = recs[k].tau;
      row.t_phys = recs[k].t_phys;
      compare(recs[k].state, ref, row);
      row.cert_pos = recs[k].cert_bound;
      out.rows.push_back(std::move(row));
    }
  } else if (opt.reference == ReferenceKind::Kepler) {
    for (std::size_t k = 1; k < recs.size(); ++k) {
      ProbeRow row;
      row.step = recs[k].index;
      row.tau = recs[k].tau;
      row.t_phys = recs[k].t_phys;
      compare(recs[k].state, kepler_propagate(state, recs[k].t_phys - state.t_phys), row);
      out.rows.push_back(std::move(row));
    }
  } else {
    IntegrationConfig ref = cfg;
    ref.step = cfg.step / opt.substeps;
    ref.nsteps = cfg.nsteps * opt.substeps;
    ref.fp_tol = opt.reference_fp_tol;
    ref.fp_maxiter = std::max(cfg.fp_maxiter, 200);
    ref.certify = false;
    if (opt.reference_tableau) ref.tableau = *opt.reference_tableau;
    const Trajectory rt = integrate(state, ref);
    if (!rt.complete) throw NumericFailure("reference trajectory failed: " + rt.error);
    std::vector<DenseSample> dense;
    dense.reserve(rt.records.size());
    for (const auto& r : rt.records) dense.push_back(sample_of(r.state));
    for (std::size_t k = 1; k < recs.size(); ++k) {
      ProbeRow row;
      row.step = recs[k].index;
      row.tau = recs[k].tau;
      row.t_phys = recs[k].t_phys;
      compare(recs[k].state, hermite(dense, recs[k].state, recs[k].t_phys), row);
      out.rows.push_back(std::move(row));
    }
  }
  return out;
}

}  // namespace nbmaj
