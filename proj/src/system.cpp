#include "nbmaj/system.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

#include "nbmaj/errors.hpp"

namespace nbmaj {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct RelativeOrbit {
  double mu = 0.0;  // gm_1 + gm_2
  double a = 0.0;
  double e = 0.0;
  double n = 0.0;   // mean motion
  Vec3 P{};         // unit vector to pericenter
  Vec3 Q{};         // in-plane unit vector 90 degrees ahead
  double E = 0.0;   // eccentric anomaly of the given state
};

void require_two_body(const SystemState& s) {
  if (s.size() != 2) throw InvalidParameters("two-body routine called with " + std::to_string(s.size()) + " bodies");
}

RelativeOrbit relative_orbit(const SystemState& s) {
  require_two_body(s);
  RelativeOrbit o;
  o.mu = s.gm[0] + s.gm[1];
  const Vec3 r = s.q[1] - s.q[0];
  const Vec3 v = s.v[1] - s.v[0];
  const double rn = norm(r);
  const double energy = 0.5 * dot(v, v) - o.mu / rn;
  if (!(energy < 0.0)) throw InvalidParameters("two-body state is not bound");
  o.a = -o.mu / (2.0 * energy);
  o.n = std::sqrt(o.mu / (o.a * o.a * o.a));
  const Vec3 h = cross(r, v);
  const Vec3 evec = (1.0 / o.mu) * cross(v, h) - (1.0 / rn) * r;
  o.e = norm(evec);
  if (o.e > 1e-12) {
    o.P = (1.0 / o.e) * evec;
  } else {
    o.P = (1.0 / rn) * r;
  }
  const double hn = norm(h);
  o.Q = (1.0 / hn) * cross(h, o.P);
  // Eccentric anomaly from position in the (P, Q) frame.
  const double b = o.a * std::sqrt(1.0 - o.e * o.e);
  o.E = std::atan2(dot(r, o.Q) / b, dot(r, o.P) / o.a + o.e);
  return o;
}

Vec3 barycenter_of(const std::vector<double>& gm, const std::vector<Vec3>& x) {
  const double m = gm[0] + gm[1];
  return (1.0 / m) * (gm[0] * x[0] + gm[1] * x[1]);
}

void place_relative(SystemState& s, const Vec3& cq, const Vec3& cv, const Vec3& r, const Vec3& v) {
  const double m = s.gm[0] + s.gm[1];
  s.q[0] = cq - (s.gm[1] / m) * r;
  s.q[1] = cq + (s.gm[0] / m) * r;
  s.v[0] = cv - (s.gm[1] / m) * v;
  s.v[1] = cv + (s.gm[0] / m) * v;
}

// Relative state at eccentric anomaly E.
void relative_at(const RelativeOrbit& o, double E, Vec3& r, Vec3& v) {
  const double b = o.a * std::sqrt(1.0 - o.e * o.e);
  const double denom = 1.0 - o.e * std::cos(E);
  const double x = o.a * (std::cos(E) - o.e);
  const double y = b * std::sin(E);
  const double vx = -o.a * o.n * std::sin(E) / denom;
  const double vy = b * o.n * std::cos(E) / denom;
  r = x * o.P + y * o.Q;
  v = vx * o.P + vy * o.Q;
}

// Stumpff functions c2, c3.
void stumpff(double z, double& c2, double& c3) {
  if (z > 1e-6) {
    const double sz = std::sqrt(z);
    c2 = (1.0 - std::cos(sz)) / z;
    c3 = (sz - std::sin(sz)) / (sz * z);
  } else if (z < -1e-6) {
    const double sz = std::sqrt(-z);
    c2 = (1.0 - std::cosh(sz)) / z;
    c3 = (std::sinh(sz) - sz) / (sz * -z);
  } else {
    c2 = 0.5 - z / 24.0 + z * z / 720.0;
    c3 = 1.0 / 6.0 - z / 120.0 + z * z / 5040.0;
  }
}

// Universal-variable propagation of the relative motion; covers unbound states.
void universal_propagate(double mu, Vec3& r, Vec3& v, double dt) {
  const double r0 = norm(r);
  const double sigma0 = dot(r, v) / std::sqrt(mu);
  const double alpha = 2.0 / r0 - dot(v, v) / mu;
  double chi = std::sqrt(mu) * std::abs(alpha) * dt;
  if (alpha <= 0.0) chi = std::sqrt(mu) * dt / r0;
  double c2 = 0.0, c3 = 0.0, rn = r0;
  for (int it = 0; it < 200; ++it) {
    const double z = alpha * chi * chi;
    stumpff(z, c2, c3);
    const double chi2 = chi * chi;
    const double t = (chi2 * chi * c3 + sigma0 * chi2 * c2 + r0 * chi * (1.0 - z * c3)) / std::sqrt(mu);
    rn = chi2 * c2 + sigma0 * chi * (1.0 - z * c3) + r0 * (1.0 - z * c2);
    const double step = (t - dt) * std::sqrt(mu) / rn;
    chi -= step;
    if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(chi))) break;
  }
  const double z = alpha * chi * chi;
  stumpff(z, c2, c3);
  const double chi2 = chi * chi;
  const double f = 1.0 - chi2 * c2 / r0;
  const double g = dt - chi2 * chi * c3 / std::sqrt(mu);
  const Vec3 r1 = f * r + g * v;
  const double r1n = norm(r1);
  const double fdot = std::sqrt(mu) / (r1n * r0) * chi * (z * c3 - 1.0);
  const double gdot = 1.0 - chi2 * c2 / r1n;
  v = fdot * r + gdot * v;
  r = r1;
}

Vec3 vec_from_json(const nlohmann::json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) {
    throw InvalidParameters(std::string("body field '") + what + "' must be a 3-vector");
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

}  // namespace

SystemState two_body_state(double eccentricity, double eccentric_anomaly) {
  if (!(eccentricity >= 0.0 && eccentricity < 1.0)) {
    throw InvalidParameters("two-body preset needs 0 <= e < 1");
  }
  SystemState s;
  s.names = {"A", "B"};
  s.gm = {0.5, 0.5};
  s.q.assign(2, Vec3{});
  s.v.assign(2, Vec3{});
  s.units = nbody_units();
  RelativeOrbit o;
  o.mu = 1.0;
  o.a = 1.0;
  o.e = eccentricity;
  o.n = 1.0;
  o.P = {1.0, 0.0, 0.0};
  o.Q = {0.0, 1.0, 0.0};
  Vec3 r, v;
  relative_at(o, eccentric_anomaly, r, v);
  place_relative(s, Vec3{}, Vec3{}, r, v);
  return s;
}

SystemState preset(const std::string& name) {
  if (name == "two-body-circular") return two_body_state(0.0, 0.0);
  if (name == "two-body-e099") return two_body_state(0.99, std::numbers::pi);
  if (name == "figure-eight") {
    SystemState s;
    s.names = {"1", "2", "3"};
    s.gm = {1.0, 1.0, 1.0};
    s.units = nbody_units();
    const Vec3 q1{0.97000436, -0.24308753, 0.0};
    const Vec3 v3{-0.93240737, -0.86473146, 0.0};
    s.q = {q1, -1.0 * q1, Vec3{}};
    s.v = {-0.5 * v3, -0.5 * v3, v3};
    return s;
  }
  throw InvalidParameters("unknown preset '" + name + "'");
}

std::vector<std::string> preset_names() {
  return {"two-body-circular", "two-body-e099", "figure-eight"};
}

SystemState system_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("bodies") || !j.contains("unit_system")) {
    throw InvalidParameters("system JSON needs 'unit_system' and 'bodies'");
  }
  SystemState s;
  const auto& u = j.at("unit_system");
  for (const char* key : {"length", "time", "mass", "G"}) {
    if (!u.contains(key)) {
      throw InvalidParameters(std::string("unit_system is missing '") + key + "'");
    }
  }
  s.units.length = u.at("length").get<std::string>();
  s.units.time = u.at("time").get<std::string>();
  s.units.mass = u.at("mass").get<std::string>();
  s.units.G = u.at("G").get<double>();
  for (const auto& b : j.at("bodies")) {
    for (const char* key : {"name", "gm", "q", "v"}) {
      if (!b.contains(key)) throw InvalidParameters(std::string("body is missing '") + key + "'");
    }
    s.names.push_back(b.at("name").get<std::string>());
    s.gm.push_back(b.at("gm").get<double>());
    s.q.push_back(vec_from_json(b.at("q"), "q"));
    s.v.push_back(vec_from_json(b.at("v"), "v"));
  }
  if (j.contains("t_phys")) s.t_phys = j.at("t_phys").get<double>();
  s.validate();
  return s;
}

nlohmann::json system_to_json(const SystemState& state) {
  nlohmann::json bodies = nlohmann::json::array();
  for (std::size_t i = 0; i < state.size(); ++i) {
    bodies.push_back({{"name", state.names.empty() ? std::to_string(i) : state.names[i]},
                      {"gm", state.gm[i]},
                      {"q", state.q[i]},
                      {"v", state.v[i]}});
  }
  return {{"unit_system",
           {{"length", state.units.length},
            {"time", state.units.time},
            {"mass", state.units.mass},
            {"G", state.units.G}}},
          {"bodies", bodies},
          {"t_phys", state.t_phys}};
}

SystemState load_system(const std::string& path_or_preset) {
  for (const auto& name : preset_names()) {
    if (name == path_or_preset) return preset(name);
  }
  std::ifstream in(path_or_preset);
  if (!in) throw InvalidParameters("cannot open system file '" + path_or_preset + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParameters("malformed system file '" + path_or_preset + "': " + e.what());
  }
  return system_from_json(j);
}

double two_body_period(const SystemState& state) { return kTwoPi / relative_orbit(state).n; }

SystemState kepler_propagate(const SystemState& state, double dt) {
  require_two_body(state);
  const double mu = state.gm[0] + state.gm[1];
  Vec3 r = state.q[1] - state.q[0];
  Vec3 v = state.v[1] - state.v[0];
  if (!(0.5 * dot(v, v) - mu / norm(r) < 0.0)) {
    universal_propagate(mu, r, v, dt);
    SystemState out = state;
    const Vec3 cq = barycenter_of(state.gm, state.q);
    const Vec3 cv = barycenter_of(state.gm, state.v);
    place_relative(out, cq + dt * cv, cv, r, v);
    out.t_phys = state.t_phys + dt;
    return out;
  }
  const RelativeOrbit o = relative_orbit(state);
  const double M0 = o.E - o.e * std::sin(o.E);
  // Reduce the mean-anomaly increment to one period before solving.
  const double M = M0 + std::fmod(o.n * dt, kTwoPi);
  // Danby's starting value keeps Newton robust for e close to 1.
  double E = M + 0.85 * o.e * (std::sin(M) >= 0.0 ? 1.0 : -1.0);
  for (int it = 0; it < 100; ++it) {
    const double f = E - o.e * std::sin(E) - M;
    const double step = f / (1.0 - o.e * std::cos(E));
    E -= step;
    if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(E))) break;
  }
  relative_at(o, E, r, v);
  SystemState out = state;
  const Vec3 cq = barycenter_of(state.gm, state.q);
  const Vec3 cv = barycenter_of(state.gm, state.v);
  place_relative(out, cq + dt * cv, cv, r, v);
  out.t_phys = state.t_phys + dt;
  return out;
}

double tau_per_orbit(const SystemState& state, const RenormSpec& spec, int samples) {
  const RelativeOrbit o = relative_orbit(state);
  if (spec.kind == RenormKind::Physical) return kTwoPi / o.n;
  SystemState s = state;
  const Vec3 cq = barycenter_of(state.gm, state.q);
  const Vec3 cv = barycenter_of(state.gm, state.v);
  double sum = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double E = kTwoPi * k / samples;
    Vec3 r, v;
    relative_at(o, E, r, v);
    place_relative(s, cq, cv, r, v);
    const double dt_dE = (1.0 - o.e * std::cos(E)) / o.n;
    sum += dt_dE / renorm_s(s, spec);
  }
  return sum * kTwoPi / samples;
}

}  // namespace nbmaj
