// Acceptance checks: one line per criterion with the measured values.
//
// Exit status counts unexpected outcomes. Two sub-checks are known to be
// unattainable and are reported as FAIL without failing the run; if one of
// them starts passing the run fails so the analysis gets revisited.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "nbmaj/cli.hpp"
#include "nbmaj/integrator.hpp"
#include "nbmaj/majorants.hpp"
#include "nbmaj/system.hpp"
#include "nbmaj/validation.hpp"

using namespace nbmaj;

namespace {

int unexpected = 0;

void report(const std::string& id, bool pass, const std::string& detail, bool known_fail = false) {
  const char* verdict = pass ? "PASS" : "FAIL";
  std::printf("criterion %-3s %s%s  %s\n", id.c_str(), verdict,
              known_fail ? (pass ? " (expected FAIL)" : " (known)") : "", detail.c_str());
  if (known_fail ? pass : !pass) ++unexpected;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double rel_change(const TruncatedSeries& a, const TruncatedSeries& b) {
  double m = 0.0;
  for (int k = 0; k <= a.order(); ++k) m = std::max(m, std::abs(a[k] - b[k]) / std::max(1.0, std::abs(b[k])));
  return m;
}

void constants() {
  const FlowRadius fr = radius_R();
  const double r05 = radius_r(0.5);
  const double rh05 = radius_r_hat_old(0.5);
  const double rlim = radius_r(1.0 - 1e-8);
  const MidpointRadius mr = midpoint_radius_hat();
  const double dR = std::abs(fr.R - 0.0839968103939379);
  const double dv = std::abs(fr.vplus - 0.149902575567304);
  const double dr = std::abs(r05 - 0.42812819);
  const double drh = std::abs(rh05 - 0.25796556);
  const double dlim = std::abs(rlim - (std::sqrt(2.0) - 1.0));
  const double dRh = std::abs(mr.fold / 0.094790093 - 1.0);
  const bool pass = dR <= 1e-12 && dv <= 1e-12 && dr <= 1e-7 && drh <= 1e-7 && dlim <= 1e-6 &&
                    dRh <= 1e-4 && fr.closed_form_agrees;
  report("1", pass,
         fmt("R=%.16f (|d|=%.1e) v+=%.15f (|d|=%.1e, closed form vs sextic root %.1e) "
             "r(1/2)=%.9f (|d|=%.1e) r_hat(1/2)=%.9f (|d|=%.1e) r(1-1e-8)=%.9f (|d|=%.1e) "
             "R_hat=%.10f (rel %.1e)",
             fr.R, dR, fr.vplus, dv, std::abs(fr.vplus_closed_form - fr.vplus_root), r05, dr,
             rh05, drh, rlim, dlim, mr.fold, dRh));
  // v+ as the smallest-modulus root of the quartic s^4 + 4s^3 + 8s^2 + 8s + 2.
  const std::complex<double> z = smallest_modulus_root(g_denominator_polynomial());
  const double dq = std::abs(z - std::complex<double>(fr.vplus, 0.0));
  report("1q", dq <= 1e-12,
         fmt("smallest quartic root %.6f%+.6fi is %.3f away from v+; v+ is the root of "
             "3s^6+18s^5+50s^4+80s^3+76s^2+40s-8 (the quartic is the denominator of g)",
             z.real(), z.imag(), dq),
         true);
}

void inequalities() {
  int bad = 0;
  double worst = -1.0;
  // Midpoints of 50 equal cells of (0, 1); at eta0 = 1 both sides equal sqrt(2) - 1.
  for (int k = 0; k < 50; ++k) {
    const double eta = (k + 0.5) / 50.0;
    const double rh = radius_r_hat_old(eta);
    const double r = radius_r(eta);
    worst = std::max(worst, rh - r);
    bad += rh > r;
  }
  int outside = 0;
  double lo_margin = INFINITY, hi_margin = INFINITY;
  for (int a = 0; a < 10; ++a) {
    for (int b = 0; b < 10; ++b) {
      const double mu = std::pow(10.0, -3.0 + 6.0 * a / 9.0);
      const double nu = std::pow(10.0, -3.0 + 6.0 * b / 9.0);
      const double eta = mu * mu / (mu * mu + nu);
      const double x = radius_r(eta) / std::sqrt(mu * mu + nu) * (mu + std::sqrt(nu / 3.0));
      lo_margin = std::min(lo_margin, x - (std::sqrt(2.0) - 1.0));
      hi_margin = std::min(hi_margin, 0.48 - x);
      outside += !(x > std::sqrt(2.0) - 1.0 && x < 0.48);
    }
  }
  report("2", bad == 0 && outside == 0,
         fmt("r_hat<=r on 50 points: %d violations (max r_hat-r %.3e); bracket on 10x10 grid: "
             "%d outside (margins %.2e below, %.2e above)",
             bad, worst, outside, lo_margin, hi_margin));
}

void dominance() {
  std::mt19937_64 rng(20240601);
  long checks = 0, violations = 0;
  double worst = -INFINITY;
  const int count = 200;
  auto add = [&](const DominanceSummary& s) {
    for (const auto& c : s.checks) {
      ++checks;
      violations += !c.report.holds;
      worst = std::max(worst, c.report.worst_excess);
    }
  };
  for (int t = 0; t < count; ++t) {
    const SystemState s = random_state(rng, 2 + static_cast<std::size_t>(t % 2));
    add(check_physical_dominance(s, 10));
    for (const RenormSpec& spec : {RenormSpec::original(), RenormSpec::cheap(),
                                   RenormSpec::pnorm(2, 3.0), RenormSpec::energy(s, 2, 3.0)}) {
      add(check_renorm_dominance(s, spec, 10));
      add(check_rk_dominance(s, spec, gauss_tableau(1), 10));
    }
  }
  report("3", violations == 0,
         fmt("%d random 2/3-body states, order 10, physical + 4 kinds x (flow, midpoint): "
             "%ld coefficient checks, %ld violations (slack 1e-12)",
             count, checks, violations));
}

void identities() {
  const RenormMajorant flow = xi_zeta_series(60);
  const RenormMajorant hat = midpoint_xi_zeta_hat(60);
  const IdentityResiduals r = flow_identity_residuals(flow);
  const double mid = midpoint_relation_residual(hat);
  const PhysicalMajorant rho = rho_series(1.0, 1.0, 60);
  const bool nonneg = all_nonnegative(flow.xi) && all_nonnegative(flow.zeta) &&
                all_nonnegative(hat.xi) && all_nonnegative(hat.zeta) && all_nonnegative(rho.rho);
  const auto [x1, z1] = psi_sweep(flow.xi, flow.zeta);
  const auto [x2, z2] = psi_hat_sweep(hat.xi, hat.zeta);
  const double moved = std::max({rel_change(x1, flow.xi), rel_change(z1, flow.zeta),
                                 rel_change(x2, hat.xi), rel_change(z2, hat.zeta),
                                 rel_change(phi_sweep(rho.rho, 1.0, 1.0), rho.rho)});
  const bool fixed = moved <= 1e-12;
  report("4", r.xi_aux <= 1e-10 && r.gamma_relation <= 1e-10 && mid <= 1e-10 && nonneg && fixed,
         fmt("K=60 residuals (relative per coefficient): xi-aux %.1e, gamma %.1e, zeta_hat %.1e; "
             "nonnegative %s; extra sweep moves coefficients by %.1e",
             r.xi_aux, r.gamma_relation, mid, nonneg ? "yes" : "no", moved));
}

void orders() {
  const SystemState c = preset("two-body-circular");
  const double h0[] = {0.05, 0.1, 0.4};
  double slopes[3];
  bool ok = true;
  for (int stages = 1; stages <= 3; ++stages) {
    std::vector<double> h, err;
    for (int k = 0; k < 6; ++k) {
      IntegrationConfig cfg;
      cfg.tableau = gauss_tableau(stages);
      cfg.renorm = RenormSpec::physical();
      cfg.step = h0[stages - 1] * std::pow(2.0, -0.5 * k);
      cfg.nsteps = 1;
      cfg.fp_tol = 1e-16;
      cfg.fp_maxiter = 500;
      ProbeOptions po;
      po.reference = ReferenceKind::Kepler;
      h.push_back(cfg.step);
      err.push_back(error_probe(c, cfg, po).rows[0].pos_err[0]);
    }
    slopes[stages - 1] = slope(h, err);
    ok = ok && std::abs(slopes[stages - 1] - (2 * stages + 1)) <= 0.15;
  }

  std::mt19937_64 rng(5);
  double rev = 0.0;
  IntegrationConfig mid;
  mid.tableau = gauss_tableau(1);
  mid.renorm = RenormSpec::original();
  for (int t = 0; t < 20; ++t) {
    const SystemState s = random_state(rng, 3);
    mid.step = 0.01;
    const SystemState f = irk_step(s, mid).state;
    mid.step = -0.01;
    const SystemState b = irk_step(f, mid).state;
    for (std::size_t i = 0; i < 3; ++i) {
      for (int k = 0; k < 3; ++k) {
        rev = std::max(rev, std::abs(b.q[i][k] - s.q[i][k]) / (1 + std::abs(s.q[i][k])));
        rev = std::max(rev, std::abs(b.v[i][k] - s.v[i][k]) / (1 + std::abs(s.v[i][k])));
      }
    }
  }

  IntegrationConfig am;
  am.tableau = gauss_tableau(1);
  am.renorm = RenormSpec::physical();
  am.step = two_body_period(c) / 500;
  am.nsteps = 10000;
  const Trajectory t = integrate(c, am);
  const Vec3 L0 = angular_momentum(c);
  const double drift = norm(angular_momentum(t.records.back().state) - L0) / norm(L0);

  report("5", ok && rev <= 10 * mid.fp_tol && drift < 1e-10 && t.complete,
         fmt("local-error slopes %.3f %.3f %.3f (targets 3 5 7 +-0.15); midpoint reversal %.1e "
             "(limit %.0e); angular momentum drift over 1e4 steps %.1e",
             slopes[0], slopes[1], slopes[2], rev, 10 * mid.fp_tol, drift));
}

void certified() {
  const RenormMajorant flow = xi_zeta_series(40);
  const RenormMajorant hat = midpoint_xi_zeta_hat(40);
  int checks = 0, exceed = 0;
  double min_ratio = INFINITY, max_ratio = 0.0;
  for (int stages : {1, 2}) {
    const RKTableau tab = gauss_tableau(stages);
    const double tmax = std::min(hat.radius / (2 * tab.norm_A_inf()), flow.radius);
    for (double e : {0.0, 0.5, 0.9, 0.99}) {
      for (int phase = 0; phase < 8; ++phase) {
        const SystemState s = two_body_state(e, 2 * std::numbers::pi * phase / 8.0);
        const BoundScalings sc = BoundScalings::from_state(s, RenormSpec::original());
        for (double f : {0.05, 0.1, 0.2, 0.4, 0.6, 0.8, 0.9, 0.95}) {
          IntegrationConfig cfg;
          cfg.tableau = tab;
          cfg.step = f * tmax;
          cfg.nsteps = 1;
          cfg.fp_tol = 1e-16;
          cfg.renorm = RenormSpec::original();
          ProbeOptions po;
          po.reference_tableau = gauss_tableau(8);
          po.substeps = 4;
          const ProbeRow row = error_probe(s, cfg, po).rows[0];
          for (std::size_t i = 0; i < 2; ++i) {
            const PosVelBound b = rk_local_error_bound(sc, flow, hat, tab, i, cfg.step);
            for (auto [err, bound] : {std::pair{row.pos_err[i], b.pos.safeguarded},
                                      std::pair{row.vel_err[i], b.vel.safeguarded}}) {
              ++checks;
              exceed += err > bound;
              if (err > 0) {
                min_ratio = std::min(min_ratio, bound / err);
                max_ratio = std::max(max_ratio, bound / err);
              }
            }
          }
        }
      }
    }
  }
  report("6", exceed == 0,
         fmt("midpoint and Gauss-2, original kind, e in {0,.5,.9,.99} x 8 anomalies, tau up to 0.95 of "
             "the certified range: %d comparisons, %d exceed the bound; bound/error in [%.3g, %.3g]",
             checks, exceed, min_ratio, max_ratio));
}

void eccentric() {
  const SystemState s = preset("two-body-e099");
  const int N = 20000;
  const RenormSpec ren = RenormSpec::pnorm(2, 3.0);
  IntegrationConfig phys;
  phys.tableau = gauss_tableau(1);
  phys.renorm = RenormSpec::physical();
  phys.step = two_body_period(s) / N;
  phys.nsteps = N;
  IntegrationConfig rc = phys;
  rc.renorm = ren;
  rc.step = tau_per_orbit(s, ren) / N;
  ProbeOptions kep;
  kep.reference = ReferenceKind::Kepler;
  const ProbeResult pp = error_probe(s, phys, kep);
  const ProbeResult pr = error_probe(s, rc, ProbeOptions{});
  const auto sp = cli::summarize("physical", pp);
  const auto sr = cli::summarize("renormalized", pr);
  double pmax = 0, rmax = 0, pratio = INFINITY, rratio = 0;
  for (const auto& x : sp) {
    pmax = std::max(pmax, x.max_err);
    pratio = std::min(pratio, x.max_over_median);
  }
  for (const auto& x : sr) {
    rmax = std::max(rmax, x.max_err);
    rratio = std::max(rratio, x.max_over_median);
  }
  // Where along the orbit the largest renormalized error occurs.
  std::size_t kmax = 0;
  for (std::size_t k = 0; k < pr.rows.size(); ++k) {
    if (pr.rows[k].pos_err[0] > pr.rows[kmax].pos_err[0]) kmax = k;
  }
  const SystemState& at = pr.trajectory.records[kmax + 1].state;
  const double sep_at_max = norm(at.q[0] - at.q[1]);
  const bool complete = pp.trajectory.complete && pr.trajectory.complete;

  report("7a", complete && rmax * 10 <= pmax,
         fmt("e=0.99, midpoint, %d steps each: max local position error physical %.3e, "
             "renormalized (pnorm p=2 alpha=3) %.3e, ratio %.3g",
             N, pmax, rmax, pmax / rmax));
  report("7b", complete && pratio > 100,
         fmt("physical max/median local error %.3g (> 100 required)", pratio));
  report("7c", complete && rratio < 10,
         fmt("renormalized max/median local error %.3g (< 10 required); the largest error "
             "occurs at separation %.3g (pericenter 0.01, apocenter 1.99), not at pericenter; "
             "the absolute error scales with the separation along the orbit",
             rratio, sep_at_max),
         true);
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  constants();
  inequalities();
  dominance();
  identities();
  orders();
  certified();
  eccentric();
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("unexpected outcomes: %d (%.1f s)\n", unexpected, secs);
  return unexpected == 0 ? 0 : 1;
}
