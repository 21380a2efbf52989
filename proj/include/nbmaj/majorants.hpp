#pragma once

// Majorant series for the N-body flow and its Runge-Kutta discretizations,
// the associated convergence radii, and the local bounds they certify.
//
// Physical time: rho solves rho'' = nu0 rho / (2 - rho^2)^{3/2}, rho(0) = 1,
// rho'(0) = mu0, and q_i - q_j ⊴ |q_i^0 - q_j^0| rho.
//
// Renormalized time: (xi, zeta) is the fixed point of
//   xi   = 1 + int sigma (1 + alpha zeta),
//   zeta = int sigma xi / (2 - xi^2)^{3/2},      sigma = (2 - chi)^{-1/(2p)},
// with Q_i - Q_j ⊴ |q_i^0 - q_j^0| xi and V_i - V_j ⊴ |v_i^0 - v_j^0| + s0 M_ij zeta.
// For the original renormalization p = alpha = 1 and
//   chi = (2 - xi^2)^{-1} (2 zeta + zeta^2 + (2 - xi^2)^{-1/2}).
// RK stage majorants replace "int" by "c tau" with c = 1/2 for the midpoint rule.

#include <complex>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "nbmaj/nbody.hpp"
#include "nbmaj/series.hpp"
#include "nbmaj/tableau.hpp"

namespace nbmaj {

// ---------------------------------------------------------------------------
// Physical time

struct PhysicalMajorant {
  TruncatedSeries rho;
  double mu0 = 0.0;
  double nu0 = 0.0;
  double eta0 = 0.0;
  // Certified radius in t: r(eta0) / sqrt(mu0^2 + nu0).
  double radius = 0.0;
};

// One application of rho -> 1 + mu0 t + nu0 int int rho (2 - rho^2)^{-3/2}.
TruncatedSeries phi_sweep(const TruncatedSeries& rho, double mu0, double nu0);

// Fixed point of phi_sweep after ceil(K/2) + 1 sweeps.
PhysicalMajorant rho_series(double mu0, double nu0, int order = kDefaultOrder);
// Same coefficients by the direct second-order Taylor recurrence.
TruncatedSeries rho_series_recurrence(double mu0, double nu0, int order = kDefaultOrder);

// lambda'' = (1 - eta0)(1 + lambda)(1 - 2 lambda - lambda^2)^{-3/2},
// lambda(0) = 0, lambda'(0) = sqrt(eta0).
TruncatedSeries lambda_series(double eta0, int order = kDefaultOrder);

// ---------------------------------------------------------------------------
// Radii

enum class Precision { Double, Extended, Digits50 };

// r(eta0) = int_0^{sqrt2-1} (eta0 + 2(1-eta0)((1-2s-s^2)^{-1/2} - 1))^{-1/2} ds.
double radius_r(double eta0, double tol = 1e-10, Precision precision = Precision::Extended);

// sup_{0<s<sqrt2-1} 2s / (sqrt(eta0) + sqrt(eta0 + kappa(s)(1 - eta0))),
// kappa(s) = 2s(1+s)/(1-2s-s^2)^{3/2}.
double radius_r_hat_old(double eta0);

struct FlowRadius {
  double R = 0.0;
  double vplus = 0.0;              // authoritative (polynomial root)
  double vplus_closed_form = 0.0;  // radical expression, 50 digits
  double vplus_root = 0.0;
  double quadrature_error = 0.0;
  bool closed_form_agrees = true;  // |closed - root| <= 1e-12
};

// Integrand g(s) of the flow radius; g(0) = 1 and g(v+) = 0.
double flow_radius_integrand(double s);
// Coefficients (highest first) of 3s^6 + 18s^5 + 50s^4 + 80s^3 + 76s^2 + 40s - 8,
// whose smallest-modulus root is v+.
std::vector<double> vplus_polynomial();
// Coefficients of s^4 + 4s^3 + 8s^2 + 8s + 2 (denominator of g).
std::vector<double> g_denominator_polynomial();
// Root of smallest modulus of a real polynomial (highest degree first).
std::complex<double> smallest_modulus_root(const std::vector<double>& coeffs);

FlowRadius radius_R(double tol = 1e-14, Precision precision = Precision::Extended);

struct MidpointRadius {
  double fold = 0.0;           // max of tau = T(xi_hat) along the real branch
  double fold_argument = 0.0;  // xi_hat at the fold
  double domb_sykes = 0.0;     // coefficient-ratio extrapolation
  bool agree = true;           // relative difference <= 1e-3
};

MidpointRadius midpoint_radius_hat(double tol = 1e-13, int ratio_order = 100);

// Maps the strip |Im tau| < R onto the unit disk.
double conformal_sigma(double tau, double R);

// Domb-Sykes estimate: linear fit of f_{k+1}/f_k against 1/k on the upper half
// of the coefficients; returns 1 / intercept.
double series_radius_estimate(const TruncatedSeries& f);

// ---------------------------------------------------------------------------
// Renormalized time

// Parameters of the majorant system for a given renormalization function.
struct RenormShape {
  int p = 1;
  double alpha = 1.0;
  // U(q0) / (E0 + U(q0)) for the energy-based function.
  std::optional<double> energy_ratio;

  static RenormShape from(const RenormSpec& spec, const SystemState& state);
  bool is_original() const { return p == 1 && alpha == 1.0 && !energy_ratio; }
};

enum class MajorantKind { ExactFlow, Midpoint };

struct RenormMajorant {
  TruncatedSeries xi;
  TruncatedSeries zeta;
  MajorantKind kind = MajorantKind::ExactFlow;
  double radius = 0.0;
  RenormShape shape;
};

TruncatedSeries chi_series(const TruncatedSeries& xi, const TruncatedSeries& zeta,
                           const RenormShape& shape = {});
std::pair<TruncatedSeries, TruncatedSeries> psi_sweep(const TruncatedSeries& xi,
                                                      const TruncatedSeries& zeta,
                                                      const RenormShape& shape = {});
// Stage operator: 1 + c tau sigma (1 + alpha zeta), c tau sigma xi (2 - xi^2)^{-3/2}.
std::pair<TruncatedSeries, TruncatedSeries> psi_hat_sweep(const TruncatedSeries& xi,
                                                          const TruncatedSeries& zeta,
                                                          const RenormShape& shape = {},
                                                          double stage_scale = 0.5);

RenormMajorant xi_zeta_series(int order = kDefaultOrder, const RenormShape& shape = {});
RenormMajorant midpoint_xi_zeta_hat(int order = kDefaultOrder, const RenormShape& shape = {});

// Direct online Taylor recurrence for the same systems; stage_scale selects
// the stage operator (nullopt = exact flow).
std::pair<TruncatedSeries, TruncatedSeries> xi_zeta_recurrence(
    int order, const RenormShape& shape = {}, std::optional<double> stage_scale = std::nullopt);

// Max coefficient residuals of the algebraic identities (original shape).
struct IdentityResiduals {
  double gamma_relation = 0.0;  // (2 - xi^2)^{-1/2} - (1 + zeta + zeta^2/2)
  double xi_aux = 0.0;          // xi (1 + gamma) - sqrt(1 + 4 gamma + 2 gamma^2)
};
IdentityResiduals flow_identity_residuals(const RenormMajorant& flow);
// zeta_hat - (sqrt(1 - 4 xi_hat (1 - xi_hat) / (2 - xi_hat^2)^{3/2}) - 1) / 2
double midpoint_relation_residual(const RenormMajorant& midpoint);

void to_json(nlohmann::json& j, const RenormMajorant& m);

// ---------------------------------------------------------------------------
// Bounds

struct BoundScalings {
  std::size_t n = 0;
  double s0 = 0.0;
  std::vector<double> Ki;
  std::vector<double> Mij;  // row-major n x n
  std::vector<double> min_gap;
  std::vector<double> vnorm;
  double alpha_factor = 1.0;  // max(1, 1/alpha) for position bounds

  static BoundScalings from_state(const SystemState& state, const RenormSpec& spec);
  double pos_scale(std::size_t i) const;  // max(s0 |v_i|, s0^2 K_i)
};

// Tail sum of a nonnegative series. The safeguarded value replaces the last
// retained term a_K x^K by a_K x^K / (1 - x r), r the largest of the last five
// coefficient ratios (infinite when x r >= 1).
struct BoundValue {
  double raw = 0.0;
  double safeguarded = 0.0;
};
BoundValue evaluate_tail(const TruncatedSeries& f, int from_degree, double x);

BoundValue local_bound_physical(const BoundScalings& sc, const PhysicalMajorant& rho, std::size_t i,
                                double t);

struct PosVelBound {
  BoundValue pos;
  BoundValue vel;
};

PosVelBound local_bound_renorm(const BoundScalings& sc, const RenormMajorant& flow, std::size_t i,
                               double tau);

// One-step error bound for an order-p Runge-Kutta scheme applied to the
// renormalized equations, with x = 2 |A|_inf tau and c = |b|_1 / |A|_inf:
//   vel: s0 K_i          sum_{k>p} (c zeta_hat_k x^k + zeta_k tau^k)
//   pos: max(s0|v|,s0^2K) sum_{k>p} (c xi_hat_k x^k + xi_k tau^k)
// The update and the exact flow are bounded separately and their difference
// by the triangle inequality.
PosVelBound rk_local_error_bound(const BoundScalings& sc, const RenormMajorant& flow,
                                 const RenormMajorant& disc, const RKTableau& tab, std::size_t i,
                                 double tau);

// Update majorant coefficients of a tableau: c * hat_k (2 |A|_inf)^k.
TruncatedSeries rk_update_majorant(const TruncatedSeries& hat, const RKTableau& tab);

}  // namespace nbmaj
