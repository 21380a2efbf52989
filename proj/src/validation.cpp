#include "nbmaj/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nbmaj/errors.hpp"
#include "nbmaj/majorants.hpp"
#include "nbmaj/taylor.hpp"

namespace nbmaj {

SystemState random_state(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> log_gm(std::log(0.1), std::log(2.0));
  SystemState s;
  s.units = nbody_units();
  for (std::size_t i = 0; i < n; ++i) {
    s.names.push_back("b" + std::to_string(i));
    s.gm.push_back(std::exp(log_gm(rng)));
    Vec3 q;
    bool ok = false;
    while (!ok) {
      q = {unit(rng), unit(rng), unit(rng)};
      ok = std::all_of(s.q.begin(), s.q.end(), [&](const Vec3& o) { return norm(q - o) >= 0.1; });
    }
    s.q.push_back(q);
    s.v.push_back({unit(rng), unit(rng), unit(rng)});
  }
  return s;
}

bool DominanceSummary::holds() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.report.holds; });
}

double DominanceSummary::worst_excess() const {
  double w = -std::numeric_limits<double>::infinity();
  for (const auto& c : checks) w = std::max(w, c.report.worst_excess);
  return w;
}

namespace {

// f_k c^k
TruncatedSeries scale_argument(const TruncatedSeries& f, double c) {
  TruncatedSeries out(f.order());
  double p = 1.0;
  for (int k = 0; k <= f.order(); ++k) {
    out[k] = f[k] * p;
    p *= c;
  }
  return out;
}

VectorSeries minus_constant(VectorSeries f) {
  for (double& x : f[0]) x = 0.0;
  return f;
}

void add(DominanceSummary& sum, std::string name, std::size_t i, std::size_t j,
         const VectorSeries& f, const TruncatedSeries& fbar, DominanceSlack slack) {
  sum.checks.push_back({std::move(name), i, j, check_dominance(f, fbar, slack)});
}

}  // namespace

DominanceSummary check_physical_dominance(const SystemState& state, int order,
                                          DominanceSlack slack) {
  const PairwiseQuantities pq = pairwise_quantities(state);
  const PhysicalMajorant rho = rho_series(pq.mu, pq.nu, order);
  const FlowSeries y = taylor_physical(state, order);
  const BoundScalings sc = BoundScalings::from_state(state, RenormSpec::physical());
  DominanceSummary sum;
  const std::size_t n = state.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      add(sum, "q_i-q_j", i, j, y.q[i] - y.q[j], norm(state.q[i] - state.q[j]) * rho.rho, slack);
    }
    VectorSeries dev = minus_constant(y.q[i]);
    if (order >= 1) {
      for (double& x : dev[1]) x = 0.0;
    }
    TruncatedSeries tail = rho.rho;
    tail[0] = 0.0;
    if (order >= 1) tail[1] = 0.0;
    add(sum, "q_i-q_i0-t*v_i0", i, i, dev, sc.min_gap[i] * tail, slack);
  }
  return sum;
}

DominanceSummary check_renorm_dominance(const SystemState& state, const RenormSpec& spec,
                                        int order, DominanceSlack slack) {
  const RenormShape shape = RenormShape::from(spec, state);
  const RenormMajorant flow = xi_zeta_series(order, shape);
  const FlowSeries y = taylor_renormalized(state, spec, order);
  const BoundScalings sc = BoundScalings::from_state(state, spec);
  const std::size_t n = state.size();
  DominanceSummary sum;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      add(sum, "Q_i-Q_j", i, j, y.q[i] - y.q[j], norm(state.q[i] - state.q[j]) * flow.xi, slack);
      TruncatedSeries vb = sc.s0 * sc.Mij[i * n + j] * flow.zeta;
      vb[0] += norm(state.v[i] - state.v[j]);
      add(sum, "V_i-V_j", i, j, y.v[i] - y.v[j], vb, slack);
    }
    add(sum, "V_i-v_i0", i, i, minus_constant(y.v[i]), sc.s0 * sc.Ki[i] * flow.zeta, slack);
    TruncatedSeries xm1 = flow.xi;
    xm1[0] = 0.0;
    add(sum, "Q_i-q_i0", i, i, minus_constant(y.q[i]), sc.pos_scale(i) * sc.alpha_factor * xm1,
        slack);
  }
  return sum;
}

DominanceSummary check_rk_dominance(const SystemState& state, const RenormSpec& spec,
                                    const RKTableau& tab, int order, DominanceSlack slack) {
  const RenormShape shape = RenormShape::from(spec, state);
  const RenormMajorant hat = midpoint_xi_zeta_hat(order, shape);
  const RKSeries y = taylor_rk_step(state, spec, tab, order);
  const BoundScalings sc = BoundScalings::from_state(state, spec);
  const std::size_t n = state.size();
  const double x = 2.0 * tab.norm_A_inf();
  const TruncatedSeries xi_s = scale_argument(hat.xi, x);
  const TruncatedSeries zeta_s = scale_argument(hat.zeta, x);
  DominanceSummary sum;
  for (const FlowSeries& stage : y.stages) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        add(sum, "Qhat_i-Qhat_j", i, j, stage.q[i] - stage.q[j],
            norm(state.q[i] - state.q[j]) * xi_s, slack);
        TruncatedSeries vb = sc.s0 * sc.Mij[i * n + j] * zeta_s;
        vb[0] += norm(state.v[i] - state.v[j]);
        add(sum, "Vhat_i-Vhat_j", i, j, stage.v[i] - stage.v[j], vb, slack);
      }
      add(sum, "Vhat_i-v_i0", i, i, minus_constant(stage.v[i]), sc.s0 * sc.Ki[i] * zeta_s, slack);
    }
  }
  const TruncatedSeries up_xi = rk_update_majorant(hat.xi, tab);
  const TruncatedSeries up_zeta = rk_update_majorant(hat.zeta, tab);
  for (std::size_t i = 0; i < n; ++i) {
    add(sum, "Vtilde_i-v_i0", i, i, minus_constant(y.update.v[i]), sc.s0 * sc.Ki[i] * up_zeta,
        slack);
    TruncatedSeries xm1 = up_xi;
    xm1[0] = 0.0;
    add(sum, "Qtilde_i-q_i0", i, i, minus_constant(y.update.q[i]),
        sc.pos_scale(i) * sc.alpha_factor * xm1, slack);
  }
  return sum;
}

DominanceSummary check_rk_update_literal(const SystemState& state, const RenormSpec& spec,
                                         const RKTableau& tab, int order, DominanceSlack slack) {
  const RenormShape shape = RenormShape::from(spec, state);
  const RenormMajorant hat = midpoint_xi_zeta_hat(order, shape);
  const RKSeries y = taylor_rk_step(state, spec, tab, order);
  const BoundScalings sc = BoundScalings::from_state(state, spec);
  const TruncatedSeries zeta_s =
      tab.norm_b_inf() * scale_argument(hat.zeta, 2.0 * tab.norm_A_inf());
  DominanceSummary sum;
  for (std::size_t i = 0; i < state.size(); ++i) {
    add(sum, "Vtilde_i-v_i0", i, i, minus_constant(y.update.v[i]), sc.s0 * sc.Ki[i] * zeta_s,
        slack);
  }
  return sum;
}

}  // namespace nbmaj
