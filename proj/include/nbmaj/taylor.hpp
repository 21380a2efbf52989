#pragma once

// Taylor expansions of N-body trajectories computed by series arithmetic on
// the right-hand side: the exact flow in physical time, the exact flow of the
// renormalized equations, and the stage/update series of one Runge-Kutta step
// as functions of the step size. These are the reference expansions the
// majorant bounds are checked against.

#include <vector>

#include "nbmaj/nbody.hpp"
#include "nbmaj/series.hpp"
#include "nbmaj/tableau.hpp"

namespace nbmaj {

struct FlowSeries {
  std::vector<VectorSeries> q;  // one 3-d series per body
  std::vector<VectorSeries> v;
  TruncatedSeries t_phys;

  int order() const { return t_phys.order(); }
};

// s(Q, V) as a series, given position and velocity series.
TruncatedSeries renorm_s_series(const FlowSeries& y, const SystemState& shape,
                                const RenormSpec& spec);

// Derivative field F(y) = (s V, s g(Q), s) evaluated on series.
FlowSeries vector_field_series(const FlowSeries& y, const SystemState& shape,
                               const RenormSpec& spec);

FlowSeries taylor_physical(const SystemState& state, int order);
FlowSeries taylor_renormalized(const SystemState& state, const RenormSpec& spec, int order);

struct RKSeries {
  std::vector<FlowSeries> stages;
  FlowSeries update;
};

// Stage values Y_l(h) and the update y~(h) of one step of the given tableau,
// as series in the step size h, solved by fixed-point sweeps on series.
RKSeries taylor_rk_step(const SystemState& state, const RenormSpec& spec, const RKTableau& tab,
                        int order);

}  // namespace nbmaj
