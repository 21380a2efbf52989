#pragma once

// Gravitational N-body vector field, pairwise scale quantities and the global
// time-renormalization functions s(q, v).

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace nbmaj {

using Vec3 = std::array<double, 3>;

inline Vec3 operator-(const Vec3& a, const Vec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline Vec3 operator+(const Vec3& a, const Vec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
double dot(const Vec3& a, const Vec3& b);
double norm(const Vec3& a);
Vec3 cross(const Vec3& a, const Vec3& b);

// Gaussian gravitational constant squared: AU^3 / day^2 / solar mass.
inline constexpr double kGaussianG = 0.01720209895 * 0.01720209895;

struct UnitSystem {
  std::string length = "AU";
  std::string time = "day";
  std::string mass = "solar mass";
  double G = kGaussianG;
};

// Dimensionless units with G = 1 (used by the bundled presets).
UnitSystem nbody_units();

// Separations below this are reported as singular configurations.
inline constexpr double kDefaultMinSeparation = 1e-30;

struct SystemState {
  std::vector<std::string> names;
  std::vector<double> gm;  // G m_i
  std::vector<Vec3> q;
  std::vector<Vec3> v;
  double t_phys = 0.0;
  UnitSystem units;

  std::size_t size() const noexcept { return gm.size(); }
  double mass(std::size_t i) const { return gm[i] / units.G; }
  // Throws InvalidParameters on inconsistent lengths, n < 2 or gm <= 0, and
  // SingularConfiguration on coincident bodies.
  void validate(double min_separation = kDefaultMinSeparation) const;
};

enum class RenormKind {
  Physical,  // s = 1
  Original,  // pair sum of |dv|^2/|dq|^2 + M_ij/|dq|
  Cheap,     // M_ij replaced by A(q)
  PNorm,     // 2p-norm variant with alpha
  Energy,    // velocity-free variant using E0 + U(q)
};

const char* to_string(RenormKind kind);
RenormKind renorm_kind_from_string(const std::string& name);

struct RenormSpec {
  RenormKind kind = RenormKind::Original;
  int p = 2;
  double alpha = 3.0;
  double E0 = 0.0;  // frozen total energy, Energy kind only

  static RenormSpec physical() { return {RenormKind::Physical, 1, 1.0, 0.0}; }
  static RenormSpec original() { return {RenormKind::Original, 1, 1.0, 0.0}; }
  static RenormSpec cheap() { return {RenormKind::Cheap, 1, 1.0, 0.0}; }
  static RenormSpec pnorm(int p = 2, double alpha = 3.0) { return {RenormKind::PNorm, p, alpha, 0.0}; }
  // Freezes E0 at the total energy of the given state.
  static RenormSpec energy(const SystemState& state, int p = 2, double alpha = 3.0);

  void validate() const;
};

struct PairwiseQuantities {
  std::size_t n = 0;
  std::vector<double> K;  // K_i = sum_{j != i} gm_j / |q_i - q_j|^2
  std::vector<double> M;  // M_ij = K_i + K_j, row-major n x n (diagonal unused)
  double A = 0.0;         // sum_{i<j} (gm_i + gm_j) / |q_i - q_j|^2
  double U = 0.0;         // potential energy magnitude
  double E = 0.0;         // total energy
  double mu = 0.0;        // max |dv| / |dq|
  double nu = 0.0;        // max M_ij / |dq|
  double eta0 = 0.0;      // mu^2 / (mu^2 + nu)

  double Mij(std::size_t i, std::size_t j) const { return M[i * n + j]; }
};

std::vector<Vec3> accelerations(const SystemState& state,
                                double min_separation = kDefaultMinSeparation);
PairwiseQuantities pairwise_quantities(const SystemState& state,
                                       double min_separation = kDefaultMinSeparation);

double kinetic_energy(const SystemState& state);
double potential_energy(const SystemState& state);  // U(q) >= 0
double total_energy(const SystemState& state);
Vec3 angular_momentum(const SystemState& state);

double renorm_s(const SystemState& state, const RenormSpec& spec,
                double min_separation = kDefaultMinSeparation);

struct StateDerivative {
  std::vector<Vec3> dq;
  std::vector<Vec3> dv;
  double dt = 1.0;  // d t_phys / d tau = s
};

StateDerivative rhs(const SystemState& state, const RenormSpec& spec,
                    double min_separation = kDefaultMinSeparation);

SystemState reduce_to_barycenter(const SystemState& state);

// Flat layout (q_1..q_N, v_1..v_N, t_phys) used by the integrator.
std::vector<double> pack(const SystemState& state);
void unpack(std::span<const double> y, SystemState& state);

}  // namespace nbmaj
