#include "nbmaj/nbody.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nbmaj/errors.hpp"

namespace nbmaj {

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

UnitSystem nbody_units() { return {"nbody", "nbody", "nbody", 1.0}; }

namespace {

double separation(const SystemState& s, std::size_t i, std::size_t j, double min_separation) {
  const double r = norm(s.q[i] - s.q[j]);
  if (!(r > min_separation)) {
    throw SingularConfiguration(i, j,
                                "singular configuration: bodies " + std::to_string(i) + " and " +
                                    std::to_string(j) + " coincide (separation " +
                                    std::to_string(r) + ")");
  }
  return r;
}

}  // namespace

void SystemState::validate(double min_separation) const {
  const std::size_t n = gm.size();
  if (n < 2) throw InvalidParameters("an N-body state needs at least two bodies");
  if (q.size() != n || v.size() != n) {
    throw InvalidParameters("state arrays gm, q, v must have equal lengths");
  }
  if (!names.empty() && names.size() != n) {
    throw InvalidParameters("state names must match the body count");
  }
  if (!(units.G > 0.0)) throw InvalidParameters("gravitational constant must be positive");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(gm[i] > 0.0)) {
      throw InvalidParameters("gravitational parameter of body " + std::to_string(i) +
                              " must be positive");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) separation(*this, i, j, min_separation);
  }
}

const char* to_string(RenormKind kind) {
  switch (kind) {
    case RenormKind::Physical: return "physical";
    case RenormKind::Original: return "original";
    case RenormKind::Cheap: return "cheap";
    case RenormKind::PNorm: return "pnorm";
    case RenormKind::Energy: return "energy";
  }
  return "unknown";
}

RenormKind renorm_kind_from_string(const std::string& name) {
  for (auto k : {RenormKind::Physical, RenormKind::Original, RenormKind::Cheap, RenormKind::PNorm,
                 RenormKind::Energy}) {
    if (name == to_string(k)) return k;
  }
  throw InvalidParameters("unknown renormalization kind '" + name + "'");
}

RenormSpec RenormSpec::energy(const SystemState& state, int p, double alpha) {
  return {RenormKind::Energy, p, alpha, total_energy(state)};
}

void RenormSpec::validate() const {
  if (kind == RenormKind::PNorm || kind == RenormKind::Energy) {
    if (p < 1) throw InvalidParameters("renormalization exponent p must be >= 1");
    if (!(alpha > 0.0)) throw InvalidParameters("renormalization alpha must be positive");
  }
}

std::vector<Vec3> accelerations(const SystemState& state, double min_separation) {
  const std::size_t n = state.size();
  std::vector<Vec3> g(n, Vec3{0.0, 0.0, 0.0});
  // Fixed summation order per body keeps results bit-reproducible.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const Vec3 d = state.q[j] - state.q[i];
      const double r = separation(state, i, j, min_separation);
      const double f = state.gm[j] / (r * r * r);
      for (int c = 0; c < 3; ++c) g[i][c] += f * d[c];
    }
  }
  return g;
}

PairwiseQuantities pairwise_quantities(const SystemState& state, double min_separation) {
  const std::size_t n = state.size();
  PairwiseQuantities pq;
  pq.n = n;
  pq.K.assign(n, 0.0);
  pq.M.assign(n * n, 0.0);
  std::vector<double> dist(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double r = separation(state, i, j, min_separation);
      dist[i * n + j] = dist[j * n + i] = r;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) pq.K[i] += state.gm[j] / (dist[i * n + j] * dist[i * n + j]);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double r = dist[i * n + j];
      const double m = pq.K[i] + pq.K[j];
      pq.M[i * n + j] = pq.M[j * n + i] = m;
      pq.A += (state.gm[i] + state.gm[j]) / (r * r);
      pq.mu = std::max(pq.mu, norm(state.v[i] - state.v[j]) / r);
      pq.nu = std::max(pq.nu, m / r);
    }
  }
  pq.U = potential_energy(state);
  pq.E = kinetic_energy(state) - pq.U;
  pq.eta0 = pq.mu * pq.mu / (pq.mu * pq.mu + pq.nu);
  return pq;
}

double kinetic_energy(const SystemState& state) {
  double t = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) t += 0.5 * state.mass(i) * dot(state.v[i], state.v[i]);
  return t;
}

double potential_energy(const SystemState& state) {
  double u = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    for (std::size_t j = i + 1; j < state.size(); ++j) {
      u += state.gm[i] * state.gm[j] / (state.units.G * norm(state.q[i] - state.q[j]));
    }
  }
  return u;
}

double total_energy(const SystemState& state) { return kinetic_energy(state) - potential_energy(state); }

Vec3 angular_momentum(const SystemState& state) {
  Vec3 L{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < state.size(); ++i) L = L + state.mass(i) * cross(state.q[i], state.v[i]);
  return L;
}

double renorm_s(const SystemState& state, const RenormSpec& spec, double min_separation) {
  if (spec.kind == RenormKind::Physical) return 1.0;
  spec.validate();
  const std::size_t n = state.size();
  const PairwiseQuantities pq = pairwise_quantities(state, min_separation);

  double vel_sum = 0.0;
  double pos_sum = 0.0;
  const int p = spec.p;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double r = norm(state.q[i] - state.q[j]);
      const double w = norm(state.v[i] - state.v[j]) / r;
      switch (spec.kind) {
        case RenormKind::Original:
          vel_sum += w * w;
          pos_sum += pq.Mij(i, j) / r;
          break;
        case RenormKind::Cheap:
          vel_sum += w * w;
          pos_sum += 1.0 / r;
          break;
        case RenormKind::PNorm:
          vel_sum += std::pow(w, 2 * p);
          pos_sum += std::pow(spec.alpha * r, -p);
          break;
        case RenormKind::Energy: {
          const double mw = 1.0 / std::sqrt(state.mass(i)) + 1.0 / std::sqrt(state.mass(j));
          // 4 (for p <= 2) dominates 2^p, which the velocity bound needs.
          const double c = std::max(4.0, std::pow(2.0, p));
          vel_sum += c * std::pow(mw, 2 * p) / std::pow(r, 2 * p);
          pos_sum += std::pow(r, -p);
          break;
        }
        case RenormKind::Physical: break;
      }
    }
  }
  double total = 0.0;
  switch (spec.kind) {
    case RenormKind::Original: total = vel_sum + pos_sum; break;
    case RenormKind::Cheap: total = vel_sum + pq.A * pos_sum; break;
    case RenormKind::PNorm: total = vel_sum + std::pow(pq.A, p) * pos_sum; break;
    case RenormKind::Energy: {
      const double kin = spec.E0 + pq.U;
      if (!(kin > 0.0)) {
        throw InvalidParameters("energy renormalization needs E0 + U(q) > 0");
      }
      total = std::pow(kin, p) * vel_sum + std::pow(pq.A / spec.alpha, p) * pos_sum;
      break;
    }
    case RenormKind::Physical: break;
  }
  const int root = (spec.kind == RenormKind::PNorm || spec.kind == RenormKind::Energy) ? p : 1;
  return std::pow(total, -1.0 / (2.0 * root));
}

StateDerivative rhs(const SystemState& state, const RenormSpec& spec, double min_separation) {
  const double s = renorm_s(state, spec, min_separation);
  StateDerivative d;
  d.dv = accelerations(state, min_separation);
  d.dq.resize(state.size());
  for (std::size_t i = 0; i < state.size(); ++i) {
    d.dq[i] = s * state.v[i];
    d.dv[i] = s * d.dv[i];
  }
  d.dt = s;
  return d;
}

SystemState reduce_to_barycenter(const SystemState& state) {
  double total = 0.0;
  Vec3 mq{0.0, 0.0, 0.0};
  Vec3 mv{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < state.size(); ++i) {
    total += state.gm[i];
    mq = mq + state.gm[i] * state.q[i];
    mv = mv + state.gm[i] * state.v[i];
  }
  if (!(total > 0.0)) throw InvalidParameters("barycentric reduction needs positive total mass");
  const Vec3 cq = (1.0 / total) * mq;
  const Vec3 cv = (1.0 / total) * mv;
  SystemState out = state;
  for (std::size_t i = 0; i < state.size(); ++i) {
    out.q[i] = state.q[i] - cq;
    out.v[i] = state.v[i] - cv;
  }
  return out;
}

std::vector<double> pack(const SystemState& state) {
  const std::size_t n = state.size();
  std::vector<double> y(6 * n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (int c = 0; c < 3; ++c) {
      y[3 * i + c] = state.q[i][c];
      y[3 * n + 3 * i + c] = state.v[i][c];
    }
  }
  y[6 * n] = state.t_phys;
  return y;
}

void unpack(std::span<const double> y, SystemState& state) {
  const std::size_t n = state.size();
  if (y.size() != 6 * n + 1) throw DimensionMismatch("packed state has the wrong length");
  for (std::size_t i = 0; i < n; ++i) {
    for (int c = 0; c < 3; ++c) {
      state.q[i][c] = y[3 * i + c];
      state.v[i][c] = y[3 * n + 3 * i + c];
    }
  }
  state.t_phys = y[6 * n];
}

}  // namespace nbmaj
