#pragma once

// Fixed-step implicit Runge-Kutta integration of the physical and renormalized
// N-body equations. Stage equations are solved by plain fixed-point iteration.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nbmaj/nbody.hpp"
#include "nbmaj/tableau.hpp"

namespace nbmaj {

enum class Predictor { Zeroth, Euler };

struct FixedPointOptions {
  double tol = 1e-14;  // max_c |dY_c| / (1 + |Y_c|) between sweeps
  int max_iter = 100;
  Predictor predictor = Predictor::Zeroth;
};

using VectorField = std::function<void(std::span<const double> y, std::span<double> dy)>;

struct IrkResult {
  std::vector<double> y;
  std::vector<std::vector<double>> stages;
  int iterations = 0;
  double residual = 0.0;
};

// One step y0 -> y1 of the tableau applied to y' = f(y). Throws NonConvergence
// when neither the tolerance nor the stagnation criterion is met.
IrkResult irk_solve(const VectorField& f, std::span<const double> y0, const RKTableau& tab,
                    double h, const FixedPointOptions& opt = {});

struct IntegrationConfig {
  RKTableau tableau;
  double step = 0.0;  // fictitious time (physical time for the physical kind)
  int nsteps = 0;
  double fp_tol = 1e-14;
  int fp_maxiter = 100;
  Predictor predictor = Predictor::Zeroth;
  RenormSpec renorm = RenormSpec::original();
  // Attach the majorant local-error certificate to every record.
  bool certify = false;
  int certify_order = 40;

  void validate() const;
  FixedPointOptions fixed_point() const { return {fp_tol, fp_maxiter, predictor}; }
};

struct StepRecord {
  int index = 0;
  double tau = 0.0;
  double t_phys = 0.0;
  SystemState state;
  int fp_iters = 0;
  std::vector<double> local_err;   // per body, empty unless probed
  std::vector<double> cert_bound;  // per body, empty unless certified (NaN outside the radius)
};

VectorField nbody_field(const SystemState& shape, const RenormSpec& spec);

struct StepResult {
  SystemState state;
  StepRecord record;
};

StepResult irk_step(const SystemState& state, const IntegrationConfig& cfg, int index = 1,
                    double tau = 0.0);

struct Trajectory {
  std::vector<StepRecord> records;
  bool complete = true;
  std::string error;  // message of the failing step when incomplete
};

// nsteps records after the initial one; a failing step ends the run and the
// partial trajectory is returned with complete = false.
Trajectory integrate(const SystemState& state, const IntegrationConfig& cfg);

enum class ProbeMode { Local, Global };
enum class ReferenceKind { Substep, Kepler };

struct ProbeOptions {
  ProbeMode mode = ProbeMode::Local;
  ReferenceKind reference = ReferenceKind::Substep;
  int substeps = 16;
  double reference_fp_tol = 1e-15;
  // Tableau for the substep reference; the probed tableau when absent.
  std::optional<RKTableau> reference_tableau;
};

struct ProbeRow {
  int step = 0;
  double tau = 0.0;
  double t_phys = 0.0;
  std::vector<double> pos_err;  // per body
  std::vector<double> vel_err;
  std::vector<double> cert_pos;  // per body, empty unless cfg.certify
};

struct ProbeResult {
  Trajectory trajectory;
  std::vector<ProbeRow> rows;
};

// Local mode: each step of the trajectory is compared with a reference step
// from the same starting state. Global mode: the trajectory is compared with
// a reference trajectory at the same physical times (cubic Hermite in t_phys
// for the substep reference, the exact solution for the Kepler reference).
ProbeResult error_probe(const SystemState& state, const IntegrationConfig& cfg,
                        const ProbeOptions& opt = {});

}  // namespace nbmaj
