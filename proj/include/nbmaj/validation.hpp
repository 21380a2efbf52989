#pragma once

// Dominance checks of Taylor expansions against their majorants, and random
// regular initial states for property sweeps.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "nbmaj/nbody.hpp"
#include "nbmaj/series.hpp"
#include "nbmaj/tableau.hpp"

namespace nbmaj {

// n bodies with gm log-uniform in [0.1, 2], positions in [-1, 1]^3 with
// pairwise separations >= 0.1, velocity components uniform in [-1, 1].
SystemState random_state(std::mt19937_64& rng, std::size_t n);

struct DominanceCheck {
  std::string name;  // e.g. "Q_i-Q_j", "V_i-v_i0"
  std::size_t i = 0;
  std::size_t j = 0;
  DominanceReport report;
};

struct DominanceSummary {
  std::vector<DominanceCheck> checks;
  bool holds() const;
  double worst_excess() const;
};

// q_i - q_j ⊴ |q_i0 - q_j0| rho and q_i - q_i0 - t v_i0 ⊴ minGap_i (rho - 1 - rho_1 t).
DominanceSummary check_physical_dominance(const SystemState& state, int order,
                                          DominanceSlack slack = {});

// Q_i - Q_j ⊴ |dq| xi, V_i - V_j ⊴ |dv| + s0 M_ij zeta, V_i - v_i0 ⊴ s0 K_i zeta,
// Q_i - q_i0 ⊴ max(s0|v_i0|, s0^2 K_i) max(1, 1/alpha) (xi - 1).
DominanceSummary check_renorm_dominance(const SystemState& state, const RenormSpec& spec,
                                        int order, DominanceSlack slack = {});

// Stage series of one step against xi_hat, zeta_hat at 2 |A|_inf tau, and the
// update against (|b|_1/|A|_inf) times the same. Midpoint: tab = gauss_tableau(1).
DominanceSummary check_rk_dominance(const SystemState& state, const RenormSpec& spec,
                                    const RKTableau& tab, int order, DominanceSlack slack = {});

// The update bound with the factor |b|_inf in place of |b|_1/|A|_inf.
DominanceSummary check_rk_update_literal(const SystemState& state, const RenormSpec& spec,
                                         const RKTableau& tab, int order,
                                         DominanceSlack slack = {});

}  // namespace nbmaj
