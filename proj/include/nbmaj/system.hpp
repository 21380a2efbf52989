#pragma once

// Bundled initial states, system JSON files and the analytic two-body solution.

#include <string>
#include <vector>

#include <json.hpp>

#include "nbmaj/nbody.hpp"

namespace nbmaj {

// Two equal bodies (gm = 0.5 each, G = 1) on a relative ellipse with semi-major
// axis 1 and period 2 pi, placed at eccentric anomaly E (E = pi is apocenter).
SystemState two_body_state(double eccentricity, double eccentric_anomaly = 0.0);

// Names: "two-body-circular", "two-body-e099", "figure-eight".
SystemState preset(const std::string& name);
std::vector<std::string> preset_names();

// {"unit_system": {"length", "time", "mass", "G"},
//  "bodies": [{"name", "gm", "q": [x, y, z], "v": [vx, vy, vz]}]}
SystemState system_from_json(const nlohmann::json& j);
nlohmann::json system_to_json(const SystemState& state);
SystemState load_system(const std::string& path_or_preset);

// Orbital period of a bound two-body state.
double two_body_period(const SystemState& state);

// Exact two-body state after physical time dt. Unbound states use universal
// variables.
SystemState kepler_propagate(const SystemState& state, double dt);

// Length in fictitious time of one orbit, int_0^T dt / s, by the trapezoid rule
// in eccentric anomaly (spectrally accurate for the periodic integrand).
double tau_per_orbit(const SystemState& state, const RenormSpec& spec, int samples = 4096);

}  // namespace nbmaj
