#include "nbmaj/taylor.hpp"

#include <algorithm>
#include <cmath>

#include "nbmaj/errors.hpp"

namespace nbmaj {

namespace {

TruncatedSeries int_power(const TruncatedSeries& x, int p) {
  TruncatedSeries r = TruncatedSeries::constant(1.0, x.order());
  for (int k = 0; k < p; ++k) r = r * x;
  return r;
}

FlowSeries constant_flow(const SystemState& state, int order) {
  FlowSeries y;
  for (std::size_t i = 0; i < state.size(); ++i) {
    y.q.push_back(VectorSeries::constant(state.q[i], order));
    y.v.push_back(VectorSeries::constant(state.v[i], order));
  }
  y.t_phys = TruncatedSeries::constant(state.t_phys, order);
  return y;
}

FlowSeries scaled_sum(const FlowSeries& base, double scale,
                      const std::vector<std::pair<double, const FlowSeries*>>& terms,
                      bool multiply_by_h) {
  FlowSeries out = base;
  for (std::size_t i = 0; i < base.q.size(); ++i) {
    VectorSeries dq(3, base.order());
    VectorSeries dv(3, base.order());
    for (const auto& [w, f] : terms) {
      if (w == 0.0) continue;
      dq += w * f->q[i];
      dv += w * f->v[i];
    }
    if (multiply_by_h) {
      dq = shift_up(dq);
      dv = shift_up(dv);
    }
    out.q[i] += scale * dq;
    out.v[i] += scale * dv;
  }
  TruncatedSeries dt(base.order());
  for (const auto& [w, f] : terms) {
    if (w != 0.0) dt += w * f->t_phys;
  }
  if (multiply_by_h) dt = shift_up(dt);
  out.t_phys += scale * dt;
  return out;
}

}  // namespace

TruncatedSeries renorm_s_series(const FlowSeries& y, const SystemState& shape,
                                const RenormSpec& spec) {
  const int K = y.order();
  if (spec.kind == RenormKind::Physical) return TruncatedSeries::constant(1.0, K);
  spec.validate();
  const std::size_t n = y.q.size();
  std::vector<TruncatedSeries> d2(n * n, TruncatedSeries(K));
  std::vector<TruncatedSeries> w2(n * n, TruncatedSeries(K));  // |dV|^2 / |dQ|^2
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      d2[i * n + j] = vec_norm_sq_series(y.q[i] - y.q[j]);
      w2[i * n + j] =
          vec_norm_sq_series(y.v[i] - y.v[j]) * series_pow_scaled(d2[i * n + j], -1.0);
    }
  }
  auto inv_pow = [&](std::size_t i, std::size_t j, double nu) {
    return series_pow_scaled(d2[i * n + j], nu);
  };

  std::vector<TruncatedSeries> Ki(n, TruncatedSeries(K));
  TruncatedSeries A(K);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const TruncatedSeries inv2 = inv_pow(i, j, -1.0);
      Ki[i] += shape.gm[j] * inv2;
      Ki[j] += shape.gm[i] * inv2;
      A += (shape.gm[i] + shape.gm[j]) * inv2;
    }
  }

  const int p = spec.p;
  TruncatedSeries total(K);
  int root = 1;
  switch (spec.kind) {
    case RenormKind::Original:
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          total += w2[i * n + j] + (Ki[i] + Ki[j]) * inv_pow(i, j, -0.5);
        }
      }
      break;
    case RenormKind::Cheap: {
      TruncatedSeries inv_sum(K);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          total += w2[i * n + j];
          inv_sum += inv_pow(i, j, -0.5);
        }
      }
      total += A * inv_sum;
      break;
    }
    case RenormKind::PNorm: {
      root = p;
      TruncatedSeries inv_sum(K);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          total += int_power(w2[i * n + j], p);
          inv_sum += std::pow(spec.alpha, -p) * inv_pow(i, j, -0.5 * p);
        }
      }
      total += int_power(A, p) * inv_sum;
      break;
    }
    case RenormKind::Energy: {
      root = p;
      const double G = shape.units.G;
      TruncatedSeries U(K);
      TruncatedSeries vel(K);
      TruncatedSeries inv_sum(K);
      const double c = std::max(4.0, std::pow(2.0, p));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          U += (shape.gm[i] * shape.gm[j] / G) * inv_pow(i, j, -0.5);
          const double mw = 1.0 / std::sqrt(shape.mass(i)) + 1.0 / std::sqrt(shape.mass(j));
          vel += (c * std::pow(mw, 2 * p)) * inv_pow(i, j, -1.0 * p);
          inv_sum += inv_pow(i, j, -0.5 * p);
        }
      }
      const TruncatedSeries E = U + spec.E0;
      if (!(E[0] > 0.0)) throw InvalidParameters("energy renormalization needs E0 + U(q) > 0");
      total = int_power(E, p) * vel + int_power(A * (1.0 / spec.alpha), p) * inv_sum;
      break;
    }
    case RenormKind::Physical: break;
  }
  return series_pow_scaled(total, -1.0 / (2.0 * root));
}

FlowSeries vector_field_series(const FlowSeries& y, const SystemState& shape,
                               const RenormSpec& spec) {
  const int K = y.order();
  const std::size_t n = y.q.size();
  const TruncatedSeries s = renorm_s_series(y, shape, spec);
  FlowSeries f;
  f.q.reserve(n);
  f.v.assign(n, VectorSeries(3, K));
  for (std::size_t i = 0; i < n; ++i) f.q.push_back(y.v[i] * s);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const VectorSeries dq = y.q[j] - y.q[i];
      const TruncatedSeries inv3 = series_pow_scaled(vec_norm_sq_series(dq), -1.5);
      const VectorSeries unit = dq * inv3;
      f.v[i] += shape.gm[j] * unit;
      f.v[j] -= shape.gm[i] * unit;
    }
  }
  for (std::size_t i = 0; i < n; ++i) f.v[i] = f.v[i] * s;
  f.t_phys = s;
  return f;
}

FlowSeries taylor_physical(const SystemState& state, int order) {
  return taylor_renormalized(state, RenormSpec::physical(), order);
}

FlowSeries taylor_renormalized(const SystemState& state, const RenormSpec& spec, int order) {
  state.validate();
  const FlowSeries y0 = constant_flow(state, order);
  FlowSeries y = y0;
  // Picard sweeps y = y0 + int F(y): each sweep fixes one more coefficient.
  for (int sweep = 0; sweep <= order; ++sweep) {
    const FlowSeries f = vector_field_series(y, state, spec);
    FlowSeries next = y0;
    for (std::size_t i = 0; i < state.size(); ++i) {
      next.q[i] += antiderivative(f.q[i]);
      next.v[i] += antiderivative(f.v[i]);
    }
    next.t_phys += antiderivative(f.t_phys);
    y = std::move(next);
  }
  return y;
}

RKSeries taylor_rk_step(const SystemState& state, const RenormSpec& spec, const RKTableau& tab,
                        int order) {
  state.validate();
  const FlowSeries y0 = constant_flow(state, order);
  const int S = tab.stages;
  std::vector<FlowSeries> stages(static_cast<std::size_t>(S), y0);
  std::vector<FlowSeries> fields(static_cast<std::size_t>(S));
  for (int sweep = 0; sweep <= order; ++sweep) {
    for (int l = 0; l < S; ++l) fields[l] = vector_field_series(stages[l], state, spec);
    for (int l = 0; l < S; ++l) {
      std::vector<std::pair<double, const FlowSeries*>> terms;
      for (int m = 0; m < S; ++m) terms.emplace_back(tab.a(l, m), &fields[m]);
      stages[l] = scaled_sum(y0, 1.0, terms, true);
    }
  }
  for (int l = 0; l < S; ++l) fields[l] = vector_field_series(stages[l], state, spec);
  std::vector<std::pair<double, const FlowSeries*>> terms;
  for (int l = 0; l < S; ++l) terms.emplace_back(tab.b[l], &fields[l]);
  RKSeries out;
  out.update = scaled_sum(y0, 1.0, terms, true);
  out.stages = std::move(stages);
  return out;
}

}  // namespace nbmaj
