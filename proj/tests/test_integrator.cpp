#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nbmaj/errors.hpp"
#include "nbmaj/integrator.hpp"
#include "nbmaj/system.hpp"
#include "nbmaj/taylor.hpp"
#include "nbmaj/validation.hpp"
#include "support.hpp"

using namespace nbmaj;
using namespace nbmaj::testing;

namespace {

IntegrationConfig physical_config(int stages, double h, int n) {
  IntegrationConfig cfg;
  cfg.tableau = gauss_tableau(stages);
  cfg.step = h;
  cfg.nsteps = n;
  cfg.renorm = RenormSpec::physical();
  return cfg;
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

}  // namespace

TEST_CASE("Gauss tableaus") {
  const RKTableau m = gauss_tableau(1);
  CHECK(m.A == std::vector<double>{0.5});
  CHECK(m.b == std::vector<double>{1.0});
  CHECK(m.order == 2);
  const RKTableau g2 = gauss_tableau(2);
  CHECK(g2.order == 4);
  CHECK(g2.c[0] == doctest::Approx(0.5 - std::sqrt(3.0) / 6).epsilon(1e-15));
  CHECK(g2.c[1] == doctest::Approx(0.5 + std::sqrt(3.0) / 6).epsilon(1e-15));
  for (int s = 1; s <= 8; ++s) {
    const RKTableau t = gauss_tableau(s);
    double bsum = 0;
    for (int i = 0; i < s; ++i) {
      double row = 0;
      for (int j = 0; j < s; ++j) row += t.a(i, j);
      CHECK(std::abs(row - t.c[i]) < 1e-14);
      bsum += t.b[i];
    }
    CHECK(std::abs(bsum - 1) < 1e-14);
    CHECK(symplecticity_defect(t) < 1e-14);
    // Quadrature order 2s: b integrates t^k exactly for k < 2s.
    for (int k = 0; k < 2 * s; ++k) {
      double q = 0;
      for (int i = 0; i < s; ++i) q += t.b[i] * std::pow(t.c[i], k);
      CHECK(std::abs(q - 1.0 / (k + 1)) < 1e-14);
    }
  }
  CHECK_THROWS_AS(gauss_tableau(0), InvalidParameters);
  CHECK_THROWS_AS(gauss_tableau(9), InvalidParameters);
}

TEST_CASE("midpoint on the linear test equation") {
  const double lambda = -3.0;
  const VectorField f = [&](std::span<const double> y, std::span<double> dy) {
    dy[0] = lambda * y[0];
  };
  const std::vector<double> y0{1.0};
  std::vector<double> h, err;
  for (double step : {0.02, 0.01, 0.005, 0.0025}) {
    FixedPointOptions opt;
    opt.tol = 1e-15;
    const IrkResult r = irk_solve(f, y0, gauss_tableau(1), step, opt);
    const double exact_map = (1 + lambda * step / 2) / (1 - lambda * step / 2);
    CHECK(std::abs(r.y[0] - exact_map) < 1e-14);
    h.push_back(step);
    err.push_back(std::abs(r.y[0] - std::exp(lambda * step)));
    CHECK(err.back() == doctest::Approx(std::pow(std::abs(lambda) * step, 3) / 12).epsilon(0.3));
  }
  CHECK(slope(h, err) == doctest::Approx(3.0).epsilon(0.02));
}

TEST_CASE("fixed-point iteration reports non-convergence") {
  const VectorField f = [](std::span<const double> y, std::span<double> dy) { dy[0] = -50 * y[0]; };
  const std::vector<double> y0{1.0};
  CHECK_THROWS_AS(irk_solve(f, y0, gauss_tableau(1), 0.1), NonConvergence);
}

TEST_CASE("Euler predictor reaches the same step") {
  const SystemState s = preset("two-body-e099");
  IntegrationConfig a;
  a.tableau = gauss_tableau(2);
  a.step = 0.01;
  a.nsteps = 5;
  IntegrationConfig b = a;
  b.predictor = Predictor::Euler;
  const Trajectory ta = integrate(s, a), tb = integrate(s, b);
  for (std::size_t k = 0; k < ta.records.size(); ++k) {
    CHECK(norm(ta.records[k].state.q[0] - tb.records[k].state.q[0]) < 1e-13);
  }
  CHECK(tb.records[1].fp_iters <= ta.records[1].fp_iters);
}

TEST_CASE("midpoint step is reversible") {
  std::mt19937_64 gen(41);
  for (const RenormSpec& spec : {RenormSpec::physical(), RenormSpec::original(),
                                 RenormSpec::pnorm(2, 3.0)}) {
    for (int trial = 0; trial < 10; ++trial) {
      const SystemState s = random_state(gen, 3);
      IntegrationConfig cfg;
      cfg.tableau = gauss_tableau(1);
      cfg.step = 0.01;
      cfg.renorm = spec;
      const SystemState fwd = irk_step(s, cfg).state;
      cfg.step = -0.01;
      const SystemState back = irk_step(fwd, cfg).state;
      for (std::size_t i = 0; i < 3; ++i) {
        for (int c = 0; c < 3; ++c) {
          CHECK(std::abs(back.q[i][c] - s.q[i][c]) <= 10 * cfg.fp_tol * (1 + std::abs(s.q[i][c])));
          CHECK(std::abs(back.v[i][c] - s.v[i][c]) <= 10 * cfg.fp_tol * (1 + std::abs(s.v[i][c])));
        }
      }
      CHECK(std::abs(back.t_phys - s.t_phys) <= 10 * cfg.fp_tol);
    }
  }
}

TEST_CASE("observed local orders on the circular orbit") {
  const SystemState s = preset("two-body-circular");
  const double h0[] = {0.05, 0.1, 0.4};
  for (int stages = 1; stages <= 3; ++stages) {
    std::vector<double> h, err;
    for (int k = 0; k < 6; ++k) {
      IntegrationConfig cfg = physical_config(stages, h0[stages - 1] * std::pow(2.0, -0.5 * k), 1);
      cfg.fp_tol = 1e-16;
      cfg.fp_maxiter = 500;
      ProbeOptions po;
      po.reference = ReferenceKind::Kepler;
      h.push_back(cfg.step);
      err.push_back(error_probe(s, cfg, po).rows[0].pos_err[0]);
    }
    CHECK(slope(h, err) == doctest::Approx(2 * stages + 1).epsilon(0.15 / (2 * stages + 1)));
  }
}

TEST_CASE("midpoint order against the substep reference") {
  const SystemState s = preset("two-body-circular");
  const double T = two_body_period(s);
  std::vector<double> h, err;
  for (int e = 6; e <= 10; ++e) {
    IntegrationConfig cfg = physical_config(1, T * std::pow(2.0, -e), 1);
    cfg.fp_tol = 1e-16;
    h.push_back(cfg.step);
    err.push_back(error_probe(s, cfg).rows[0].pos_err[0]);
  }
  CHECK(slope(h, err) == doctest::Approx(3.0).epsilon(0.1 / 3));
}

TEST_CASE("one circular period with 1000 midpoint steps") {
  const SystemState s = preset("two-body-circular");
  const Trajectory t = integrate(s, physical_config(1, two_body_period(s) / 1000, 1000));
  REQUIRE(t.complete);
  CHECK(t.records.size() == 1001);
  const SystemState& end = t.records.back().state;
  // An independent implicit-midpoint loop on the Kepler problem gives a
  // relative return error of 1.65375e-4 for this run (phase lag ~ 2/3 N h^3).
  const double err = norm(end.q[0] - s.q[0]) / norm(s.q[0]);
  CHECK(err == doctest::Approx(1.6537466e-4).epsilon(1e-4));
  const Trajectory t2 = integrate(s, physical_config(1, two_body_period(s) / 2000, 2000));
  const double err2 = norm(t2.records.back().state.q[0] - s.q[0]) / norm(s.q[0]);
  CHECK(err / err2 == doctest::Approx(4.0).epsilon(0.01));
}

TEST_CASE("angular momentum is preserved by the midpoint rule") {
  const SystemState s = preset("two-body-circular");
  const Trajectory t = integrate(s, physical_config(1, two_body_period(s) / 500, 10000));
  REQUIRE(t.complete);
  const Vec3 L0 = angular_momentum(t.records.front().state);
  const Vec3 L1 = angular_momentum(t.records.back().state);
  CHECK(norm(L1 - L0) / norm(L0) < 1e-10);
}

TEST_CASE("renormalized steps on the eccentric orbit") {
  const SystemState s = preset("two-body-e099");
  IntegrationConfig cfg;
  cfg.tableau = gauss_tableau(1);
  cfg.renorm = RenormSpec::original();
  cfg.nsteps = 2000;
  cfg.step = tau_per_orbit(s, cfg.renorm) / cfg.nsteps;
  const Trajectory t = integrate(s, cfg);
  REQUIRE(t.complete);
  double dt_min = INFINITY, dt_max = 0;
  double r_at_min = 0, r_at_max = 0;
  for (std::size_t k = 1; k < t.records.size(); ++k) {
    const double dt = t.records[k].t_phys - t.records[k - 1].t_phys;
    CHECK(dt > 0);
    const double r = norm(t.records[k].state.q[0] - t.records[k].state.q[1]);
    if (dt < dt_min) dt_min = dt, r_at_min = r;
    if (dt > dt_max) dt_max = dt, r_at_max = r;
  }
  CHECK(r_at_min < 0.05);
  CHECK(r_at_max > 1.9);
  CHECK(t.records.back().t_phys == doctest::Approx(two_body_period(s)).epsilon(1e-3));
}

TEST_CASE("empty and failing runs") {
  const SystemState s = preset("figure-eight");
  IntegrationConfig cfg;
  cfg.tableau = gauss_tableau(2);
  cfg.step = 0.01;
  cfg.nsteps = 0;
  const Trajectory t = integrate(s, cfg);
  CHECK(t.complete);
  CHECK(t.records.size() == 1);
  CHECK(t.records[0].state.q == s.q);

  cfg.step = 0.0;
  CHECK_THROWS_AS(integrate(s, cfg), InvalidParameters);

  // Physical-time midpoint through the e = 0.99 pericenter with a coarse step.
  const SystemState e = preset("two-body-e099");
  const Trajectory f = integrate(e, physical_config(1, two_body_period(e) / 500, 500));
  CHECK_FALSE(f.complete);
  CHECK(f.records.size() > 1);
  CHECK(f.records.size() < 501);
  CHECK(f.error.find("step") != std::string::npos);
}

TEST_CASE("integration is deterministic") {
  const SystemState s = preset("figure-eight");
  IntegrationConfig cfg;
  cfg.tableau = gauss_tableau(3);
  cfg.step = 0.02;
  cfg.nsteps = 50;
  cfg.renorm = RenormSpec::pnorm(2, 3.0);
  const Trajectory a = integrate(s, cfg), b = integrate(s, cfg);
  for (std::size_t k = 0; k < a.records.size(); ++k) {
    CHECK(a.records[k].state.q == b.records[k].state.q);
    CHECK(a.records[k].t_phys == b.records[k].t_phys);
  }
}

TEST_CASE("Taylor expansions agree with the integrator") {
  std::mt19937_64 gen(42);
  const SystemState s = random_state(gen, 3);
  const double h = 1e-3;
  for (const RenormSpec& spec : {RenormSpec::physical(), RenormSpec::original(),
                                 RenormSpec::energy(s, 2, 3.0)}) {
    const FlowSeries y = spec.kind == RenormKind::Physical ? taylor_physical(s, 12)
                                                           : taylor_renormalized(s, spec, 12);
    IntegrationConfig cfg;
    cfg.tableau = gauss_tableau(6);
    cfg.step = h;
    cfg.nsteps = 1;
    cfg.renorm = spec;
    cfg.fp_tol = 1e-16;
    const SystemState end = integrate(s, cfg).records.back().state;
    for (std::size_t i = 0; i < 3; ++i) {
      const auto q = y.q[i].evaluate(h);
      for (int c = 0; c < 3; ++c) CHECK(std::abs(q[c] - end.q[i][c]) < 1e-13);
    }
    CHECK(std::abs(y.t_phys.evaluate(h) - end.t_phys) < 1e-15);
  }
  // RK step series: the update series evaluated at h reproduces one step.
  const RKTableau g2 = gauss_tableau(2);
  const RKSeries rk = taylor_rk_step(s, RenormSpec::original(), g2, 14);
  IntegrationConfig cfg;
  cfg.tableau = g2;
  cfg.step = h;
  cfg.fp_tol = 1e-16;
  const SystemState one = irk_step(s, cfg).state;
  for (std::size_t i = 0; i < 3; ++i) {
    const auto q = rk.update.q[i].evaluate(h);
    for (int c = 0; c < 3; ++c) CHECK(std::abs(q[c] - one.q[i][c]) < 1e-14);
  }
}

TEST_CASE("local probe with the Kepler reference matches the substep reference") {
  const SystemState s = preset("two-body-e099");
  IntegrationConfig cfg = physical_config(2, 0.05, 10);
  ProbeOptions kep;
  kep.reference = ReferenceKind::Kepler;
  ProbeOptions sub;
  sub.reference_tableau = gauss_tableau(8);
  const ProbeResult a = error_probe(s, cfg, kep), b = error_probe(s, cfg, sub);
  for (std::size_t k = 0; k < a.rows.size(); ++k) {
    CHECK(a.rows[k].pos_err[0] == doctest::Approx(b.rows[k].pos_err[0]).epsilon(1e-3));
  }
  ProbeOptions glob = kep;
  glob.mode = ProbeMode::Global;
  const ProbeResult g = error_probe(s, cfg, glob);
  ProbeOptions globsub = sub;
  globsub.mode = ProbeMode::Global;
  const ProbeResult gs = error_probe(s, cfg, globsub);
  for (std::size_t k = 0; k < g.rows.size(); ++k) {
    CHECK(g.rows[k].pos_err[0] == doctest::Approx(gs.rows[k].pos_err[0]).epsilon(1e-2));
  }
  cfg.renorm = RenormSpec::original();
  CHECK_THROWS_AS(error_probe(s, cfg, kep), InvalidParameters);
  CHECK_THROWS_AS(error_probe(preset("figure-eight"), cfg, glob), InvalidParameters);
}

TEST_CASE("certified trajectory") {
  const SystemState s = preset("two-body-e099");
  IntegrationConfig cfg;
  cfg.tableau = gauss_tableau(1);
  cfg.renorm = RenormSpec::original();
  cfg.step = 0.02;
  cfg.nsteps = 20;
  cfg.certify = true;
  ProbeOptions po;
  po.reference_tableau = gauss_tableau(8);
  const ProbeResult p = error_probe(s, cfg, po);
  for (const ProbeRow& r : p.rows) {
    REQUIRE(r.cert_pos.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) CHECK(r.pos_err[i] <= r.cert_pos[i]);
  }
  cfg.step = 0.2;  // beyond the certified range
  cfg.nsteps = 1;
  const Trajectory t = integrate(s, cfg);
  CHECK(std::isnan(t.records[1].cert_bound[0]));
}
