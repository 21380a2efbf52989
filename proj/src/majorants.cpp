#include "nbmaj/majorants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "nbmaj/errors.hpp"

namespace nbmaj {

namespace {

// Coefficient k of a * b from coefficients 0..k.
double cauchy(const std::vector<double>& a, const std::vector<double>& b, int k) {
  double acc = 0.0;
  for (int j = 0; j <= k; ++j) acc += a[j] * b[k - j];
  return acc;
}

// Coefficient k of f^nu, given f_0..f_k and p_0..p_{k-1}.
double pow_coeff(const std::vector<double>& f, const std::vector<double>& p, double nu, int k) {
  if (k == 0) return std::pow(f[0], nu);
  double acc = 0.0;
  for (int j = 0; j < k; ++j) acc += ((k - j) * nu - j) * f[k - j] * p[j];
  return acc / (k * f[0]);
}

double unit(int k) { return k == 0 ? 1.0 : 0.0; }

void check_order(int order) {
  if (order < 0) throw InvalidParameters("series order must be nonnegative");
}

double max_scaled_residual(const TruncatedSeries& a, const TruncatedSeries& b) {
  double worst = 0.0;
  for (int k = 0; k <= a.order(); ++k) {
    const double scale = std::max({1.0, std::abs(a[k]), std::abs(b[k])});
    worst = std::max(worst, std::abs(a[k] - b[k]) / scale);
  }
  return worst;
}

const FlowRadius& cached_flow_radius() {
  static const FlowRadius r = radius_R();
  return r;
}

const MidpointRadius& cached_midpoint_radius() {
  static const MidpointRadius r = midpoint_radius_hat();
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Physical time

TruncatedSeries phi_sweep(const TruncatedSeries& rho, double mu0, double nu0) {
  const int K = rho.order();
  const TruncatedSeries h = rho * series_pow(two_minus(rho * rho), -1.5);
  TruncatedSeries out = nu0 * antiderivative(antiderivative(h));
  out[0] += 1.0;
  if (K >= 1) out[1] += mu0;
  return out;
}

PhysicalMajorant rho_series(double mu0, double nu0, int order) {
  check_order(order);
  if (!(nu0 > 0.0)) throw InvalidParameters("rho_series needs nu0 > 0");
  if (!(mu0 >= 0.0)) throw InvalidParameters("rho_series needs mu0 >= 0");
  PhysicalMajorant m;
  m.mu0 = mu0;
  m.nu0 = nu0;
  m.eta0 = mu0 * mu0 / (mu0 * mu0 + nu0);
  TruncatedSeries rho = TruncatedSeries::constant(1.0, order);
  const int sweeps = (order + 1) / 2 + 1;
  for (int s = 0; s < sweeps; ++s) rho = phi_sweep(rho, mu0, nu0);
  m.rho = std::move(rho);
  m.radius = radius_r(m.eta0) / std::sqrt(mu0 * mu0 + nu0);
  return m;
}

TruncatedSeries rho_series_recurrence(double mu0, double nu0, int order) {
  check_order(order);
  if (!(nu0 > 0.0)) throw InvalidParameters("rho_series needs nu0 > 0");
  const std::size_t n = static_cast<std::size_t>(order) + 1;
  std::vector<double> rho(n, 0.0), u(n, 0.0), ui(n, 0.0), h(n, 0.0);
  rho[0] = 1.0;
  if (order >= 1) rho[1] = mu0;
  for (int k = 0; k + 2 <= order; ++k) {
    u[k] = 2.0 * unit(k) - cauchy(rho, rho, k);
    ui[k] = pow_coeff(u, ui, -1.5, k);
    h[k] = cauchy(rho, ui, k);
    rho[k + 2] = nu0 * h[k] / ((k + 1.0) * (k + 2.0));
  }
  return TruncatedSeries(std::move(rho));
}

TruncatedSeries lambda_series(double eta0, int order) {
  check_order(order);
  if (!(eta0 >= 0.0 && eta0 < 1.0)) throw InvalidParameters("lambda_series needs 0 <= eta0 < 1");
  const std::size_t n = static_cast<std::size_t>(order) + 1;
  std::vector<double> lam(n, 0.0), u(n, 0.0), ui(n, 0.0), h(n, 0.0), a(n, 0.0);
  if (order >= 1) lam[1] = std::sqrt(eta0);
  for (int k = 0; k + 2 <= order; ++k) {
    a[k] = unit(k) + lam[k];
    u[k] = unit(k) - 2.0 * lam[k] - cauchy(lam, lam, k);
    ui[k] = pow_coeff(u, ui, -1.5, k);
    h[k] = cauchy(a, ui, k);
    lam[k + 2] = (1.0 - eta0) * h[k] / ((k + 1.0) * (k + 2.0));
  }
  return TruncatedSeries(std::move(lam));
}

// ---------------------------------------------------------------------------
// Renormalized time

RenormShape RenormShape::from(const RenormSpec& spec, const SystemState& state) {
  RenormShape shape;
  switch (spec.kind) {
    case RenormKind::Physical:
      throw InvalidParameters("physical time has no renormalized majorant");
    case RenormKind::Original:
    case RenormKind::Cheap: return shape;
    case RenormKind::PNorm:
      shape.p = spec.p;
      shape.alpha = spec.alpha;
      return shape;
    case RenormKind::Energy: {
      shape.p = spec.p;
      shape.alpha = spec.alpha;
      const double U = potential_energy(state);
      const double T = spec.E0 + U;
      if (!(T > 0.0)) throw InvalidParameters("energy renormalization needs E0 + U(q) > 0");
      shape.energy_ratio = U / T;
      return shape;
    }
  }
  return shape;
}

TruncatedSeries chi_series(const TruncatedSeries& xi, const TruncatedSeries& zeta,
                           const RenormShape& shape) {
  const int K = xi.order();
  const double p = shape.p;
  const TruncatedSeries u = two_minus(xi * xi);
  const TruncatedSeries one = TruncatedSeries::constant(1.0, K);
  TruncatedSeries bracket = series_pow(u, -p / 2.0) - one;
  if (shape.energy_ratio) {
    const TruncatedSeries e = one + *shape.energy_ratio * (series_pow(u, -0.5) - one);
    bracket += series_pow(e, p);
  } else {
    const TruncatedSeries w = 2.0 * zeta + shape.alpha * (zeta * zeta);
    bracket += series_pow(one + w, p - 1.0) * (one + std::pow(shape.alpha, p) * w);
  }
  return series_pow(u, -p) * bracket;
}

namespace {

struct Fields {
  TruncatedSeries dxi;
  TruncatedSeries dzeta;
};

// sigma (1 + alpha zeta) and sigma xi (2 - xi^2)^{-3/2}.
Fields renorm_fields(const TruncatedSeries& xi, const TruncatedSeries& zeta,
                     const RenormShape& shape) {
  const int K = xi.order();
  const TruncatedSeries sigma =
      series_pow(two_minus(chi_series(xi, zeta, shape)), -1.0 / (2.0 * shape.p));
  Fields f;
  f.dxi = sigma * (TruncatedSeries::constant(1.0, K) + shape.alpha * zeta);
  f.dzeta = sigma * xi * series_pow(two_minus(xi * xi), -1.5);
  return f;
}

}  // namespace

std::pair<TruncatedSeries, TruncatedSeries> psi_sweep(const TruncatedSeries& xi,
                                                      const TruncatedSeries& zeta,
                                                      const RenormShape& shape) {
  const Fields f = renorm_fields(xi, zeta, shape);
  TruncatedSeries nxi = antiderivative(f.dxi);
  nxi[0] += 1.0;
  return {std::move(nxi), antiderivative(f.dzeta)};
}

std::pair<TruncatedSeries, TruncatedSeries> psi_hat_sweep(const TruncatedSeries& xi,
                                                          const TruncatedSeries& zeta,
                                                          const RenormShape& shape,
                                                          double stage_scale) {
  const Fields f = renorm_fields(xi, zeta, shape);
  TruncatedSeries nxi = stage_scale * shift_up(f.dxi);
  nxi[0] += 1.0;
  return {std::move(nxi), stage_scale * shift_up(f.dzeta)};
}

RenormMajorant xi_zeta_series(int order, const RenormShape& shape) {
  check_order(order);
  RenormMajorant m;
  m.kind = MajorantKind::ExactFlow;
  m.shape = shape;
  m.xi = TruncatedSeries::constant(1.0, order);
  m.zeta = TruncatedSeries(order);
  for (int s = 0; s <= order; ++s) std::tie(m.xi, m.zeta) = psi_sweep(m.xi, m.zeta, shape);
  m.radius = shape.is_original() ? cached_flow_radius().R : series_radius_estimate(m.zeta);
  return m;
}

RenormMajorant midpoint_xi_zeta_hat(int order, const RenormShape& shape) {
  check_order(order);
  RenormMajorant m;
  m.kind = MajorantKind::Midpoint;
  m.shape = shape;
  m.xi = TruncatedSeries::constant(1.0, order);
  m.zeta = TruncatedSeries(order);
  for (int s = 0; s <= order; ++s) {
    std::tie(m.xi, m.zeta) = psi_hat_sweep(m.xi, m.zeta, shape, 0.5);
  }
  m.radius = shape.is_original() ? cached_midpoint_radius().fold : series_radius_estimate(m.xi);
  return m;
}

std::pair<TruncatedSeries, TruncatedSeries> xi_zeta_recurrence(int order, const RenormShape& shape,
                                                               std::optional<double> stage_scale) {
  check_order(order);
  const std::size_t n = static_cast<std::size_t>(order) + 1;
  const double p = shape.p;
  const double alpha = shape.alpha;
  const double alpha_p = std::pow(alpha, p);
  auto vec = [n] { return std::vector<double>(n, 0.0); };
  std::vector<double> xi = vec(), ze = vec();
  std::vector<double> u = vec(), ui_p = vec(), ui_hp = vec(), ui_32 = vec(), ui_h = vec();
  std::vector<double> opw = vec(), wp = vec(), lin = vec(), eb = vec(), ep = vec();
  std::vector<double> br = vec(), chi = vec(), tmc = vec(), sig = vec(), oaz = vec();
  std::vector<double> sx = vec(), rx = vec(), rz = vec();
  xi[0] = 1.0;
  for (int k = 0; k < order; ++k) {
    u[k] = 2.0 * unit(k) - cauchy(xi, xi, k);
    ui_p[k] = pow_coeff(u, ui_p, -p, k);
    ui_hp[k] = pow_coeff(u, ui_hp, -p / 2.0, k);
    ui_32[k] = pow_coeff(u, ui_32, -1.5, k);
    if (shape.energy_ratio) {
      ui_h[k] = pow_coeff(u, ui_h, -0.5, k);
      eb[k] = unit(k) + *shape.energy_ratio * (ui_h[k] - unit(k));
      ep[k] = pow_coeff(eb, ep, p, k);
      br[k] = ep[k] + ui_hp[k] - unit(k);
    } else {
      const double w = 2.0 * ze[k] + alpha * cauchy(ze, ze, k);
      opw[k] = unit(k) + w;
      wp[k] = pow_coeff(opw, wp, p - 1.0, k);
      lin[k] = unit(k) + alpha_p * w;
      br[k] = cauchy(wp, lin, k) + ui_hp[k] - unit(k);
    }
    chi[k] = cauchy(ui_p, br, k);
    tmc[k] = 2.0 * unit(k) - chi[k];
    sig[k] = pow_coeff(tmc, sig, -1.0 / (2.0 * p), k);
    oaz[k] = unit(k) + alpha * ze[k];
    rx[k] = cauchy(sig, oaz, k);
    sx[k] = cauchy(sig, xi, k);
    rz[k] = cauchy(sx, ui_32, k);
    if (stage_scale) {
      xi[k + 1] = *stage_scale * rx[k];
      ze[k + 1] = *stage_scale * rz[k];
    } else {
      xi[k + 1] = rx[k] / (k + 1.0);
      ze[k + 1] = rz[k] / (k + 1.0);
    }
  }
  return {TruncatedSeries(std::move(xi)), TruncatedSeries(std::move(ze))};
}

IdentityResiduals flow_identity_residuals(const RenormMajorant& flow) {
  const int K = flow.xi.order();
  const TruncatedSeries one = TruncatedSeries::constant(1.0, K);
  const TruncatedSeries gamma = flow.zeta + 0.5 * (flow.zeta * flow.zeta);
  IdentityResiduals r;
  r.gamma_relation =
      max_scaled_residual(series_pow(two_minus(flow.xi * flow.xi), -0.5), one + gamma);
  r.xi_aux = max_scaled_residual(flow.xi * (one + gamma),
                                 series_pow(one + 4.0 * gamma + 2.0 * (gamma * gamma), 0.5));
  return r;
}

double midpoint_relation_residual(const RenormMajorant& midpoint) {
  const int K = midpoint.xi.order();
  const TruncatedSeries one = TruncatedSeries::constant(1.0, K);
  const TruncatedSeries& x = midpoint.xi;
  const TruncatedSeries inner =
      one - 4.0 * (x * (one - x) * series_pow(two_minus(x * x), -1.5));
  const TruncatedSeries rhs = 0.5 * (series_pow(inner, 0.5) - one);
  return max_scaled_residual(midpoint.zeta, rhs);
}

void to_json(nlohmann::json& j, const RenormMajorant& m) {
  j = nlohmann::json{{"kind", m.kind == MajorantKind::ExactFlow ? "exact-flow" : "midpoint"},
                     {"coefficients_xi", m.xi},
                     {"coefficients_zeta", m.zeta},
                     {"radius", m.radius},
                     {"p", m.shape.p},
                     {"alpha", m.shape.alpha}};
  if (m.shape.energy_ratio) j["energy_ratio"] = *m.shape.energy_ratio;
}

// ---------------------------------------------------------------------------
// Bounds

BoundScalings BoundScalings::from_state(const SystemState& state, const RenormSpec& spec) {
  state.validate();
  const PairwiseQuantities pq = pairwise_quantities(state);
  BoundScalings sc;
  sc.n = state.size();
  sc.s0 = renorm_s(state, spec);
  sc.Ki = pq.K;
  sc.Mij = pq.M;
  sc.min_gap.assign(sc.n, std::numeric_limits<double>::infinity());
  sc.vnorm.resize(sc.n);
  for (std::size_t i = 0; i < sc.n; ++i) {
    sc.vnorm[i] = norm(state.v[i]);
    for (std::size_t j = 0; j < sc.n; ++j) {
      if (j != i) sc.min_gap[i] = std::min(sc.min_gap[i], norm(state.q[i] - state.q[j]));
    }
  }
  const bool has_alpha = spec.kind == RenormKind::PNorm || spec.kind == RenormKind::Energy;
  sc.alpha_factor = has_alpha ? std::max(1.0, 1.0 / spec.alpha) : 1.0;
  return sc;
}

double BoundScalings::pos_scale(std::size_t i) const {
  return std::max(s0 * vnorm.at(i), s0 * s0 * Ki.at(i));
}

BoundValue evaluate_tail(const TruncatedSeries& f, int from_degree, double x) {
  const int K = f.order();
  const double ax = std::abs(x);
  BoundValue out;
  if (from_degree > K || ax == 0.0) return out;
  double last = 0.0;
  double power = std::pow(ax, from_degree);
  for (int k = from_degree; k <= K; ++k) {
    last = f[k] * power;
    out.raw += last;
    power *= ax;
  }
  double ratio = 0.0;
  for (int k = std::max(0, K - 5); k < K; ++k) {
    if (f[k] > 0.0) ratio = std::max(ratio, f[k + 1] / f[k]);
  }
  const double q = ax * ratio;
  out.safeguarded = q < 1.0 ? out.raw - last + last / (1.0 - q)
                            : std::numeric_limits<double>::infinity();
  return out;
}

namespace {

BoundValue scaled(BoundValue b, double s) { return {b.raw * s, b.safeguarded * s}; }

void check_body(const BoundScalings& sc, std::size_t i) {
  if (i >= sc.n) throw InvalidParameters("body index out of range");
}

}  // namespace

BoundValue local_bound_physical(const BoundScalings& sc, const PhysicalMajorant& rho, std::size_t i,
                                double t) {
  check_body(sc, i);
  if (!(t >= 0.0)) throw OutOfDomain("local_bound_physical needs t >= 0");
  if (!(t < rho.radius)) throw OutOfDomain("t lies outside the certified physical-time disk");
  return scaled(evaluate_tail(rho.rho, 2, t), sc.min_gap[i]);
}

PosVelBound local_bound_renorm(const BoundScalings& sc, const RenormMajorant& flow, std::size_t i,
                               double tau) {
  check_body(sc, i);
  if (!(std::abs(tau) < flow.radius)) {
    throw OutOfDomain("tau lies outside the radius of the renormalized majorant");
  }
  PosVelBound b;
  b.vel = scaled(evaluate_tail(flow.zeta, 1, tau), sc.s0 * sc.Ki[i]);
  b.pos = scaled(evaluate_tail(flow.xi, 1, tau), sc.pos_scale(i) * sc.alpha_factor);
  return b;
}

TruncatedSeries rk_update_majorant(const TruncatedSeries& hat, const RKTableau& tab) {
  const double a = tab.norm_A_inf();
  const double c = tab.norm_b_one() / a;
  TruncatedSeries out(hat.order());
  double power = 1.0;
  for (int k = 0; k <= hat.order(); ++k) {
    out[k] = c * hat[k] * power;
    power *= 2.0 * a;
  }
  return out;
}

PosVelBound rk_local_error_bound(const BoundScalings& sc, const RenormMajorant& flow,
                                 const RenormMajorant& disc, const RKTableau& tab, std::size_t i,
                                 double tau) {
  check_body(sc, i);
  if (flow.kind != MajorantKind::ExactFlow || disc.kind != MajorantKind::Midpoint) {
    throw InvalidParameters("rk_local_error_bound needs a flow and a stage majorant");
  }
  if (flow.xi.order() != disc.xi.order()) throw OrderMismatch("majorant orders differ");
  const double x = 2.0 * tab.norm_A_inf() * std::abs(tau);
  if (!(x < disc.radius)) throw OutOfDomain("scaled step lies outside the stage majorant radius");
  if (!(std::abs(tau) < flow.radius)) throw OutOfDomain("step lies outside the flow radius");
  const TruncatedSeries vel = rk_update_majorant(disc.zeta, tab) + flow.zeta;
  const TruncatedSeries pos = rk_update_majorant(disc.xi, tab) + flow.xi;
  PosVelBound b;
  b.vel = scaled(evaluate_tail(vel, tab.order + 1, tau), sc.s0 * sc.Ki[i]);
  b.pos = scaled(evaluate_tail(pos, tab.order + 1, tau), sc.pos_scale(i) * sc.alpha_factor);
  return b;
}

}  // namespace nbmaj
