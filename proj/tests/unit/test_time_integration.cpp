#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "rtf/cases.hpp"
#include "rtf/config.hpp"
#include "rtf/diagnostics.hpp"
#include "rtf/errors.hpp"
#include "rtf/solver.hpp"

using namespace rtf;

namespace {

SolverParams params(double r_i, double r_e, double gamma = 5.0 / 3.0) {
  SolverParams p;
  p.ion = fluid::GasParams::make(gamma, r_i);
  p.electron = fluid::GasParams::make(gamma, r_e);
  p.src.r_i = r_i;
  p.src.r_e = r_e;
  return p;
}

Field uniform_field(const Grid2D& g, const PrimitiveVector& w, const SolverParams& p) {
  Field U(g);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      U(i, j).set_species(0, fluid::conserved_from_primitive(w.ion, p.ion));
      U(i, j).set_species(1, fluid::conserved_from_primitive(w.electron, p.electron));
      U(i, j).set_em(w.em);
    }
  }
  return U;
}

double max_diff(const Grid2D& g, const Field& a, const Field& b) {
  double m = 0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      for (std::size_t k = 0; k < kNumVars; ++k) m = std::max(m, std::abs(a(i, j)[k] - b(i, j)[k]));
  return m;
}

// smooth periodic two-fluid state with all fields active
Field smooth_field(const Grid2D& g, const SolverParams& p) {
  Field U(g);
  const double tp = 2 * M_PI;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const double x = g.xc(i), y = g.yc(j);
      const double s = std::sin(tp * (x + 2 * y)), c = std::cos(tp * (x - y));
      const SpeciesPrimitive wi{1.0 + 0.3 * s, 0.2 * c, -0.1 * s, 0.05, 1.0 + 0.2 * c};
      const SpeciesPrimitive we{0.8 - 0.2 * c, -0.1 * s, 0.2 * c, -0.05, 0.7 + 0.1 * s};
      U(i, j).set_species(0, fluid::conserved_from_primitive(wi, p.ion));
      U(i, j).set_species(1, fluid::conserved_from_primitive(we, p.electron));
      U(i, j).set_em({0.3 * s, 0.2 * c, 0.5, 0.1 * c, -0.2 * s, 0.1 * s * c});
    }
  }
  return U;
}

// uniform plasma oscillation on a tiny periodic grid, integrated to T with n steps
Field oscillate(Integrator integ, int n, double T) {
  const Grid2D g = Grid2D::make(4, 1, 0, 1, 0, 0.25, BoundaryKind::Periodic, BoundaryKind::Periodic);
  SolverParams p = params(1.0, -1.0);
  p.implicit.tol = 1e-14;
  PrimitiveVector w;
  w.ion = {1.0, 0.0, 0.02, 0, 1.0};
  w.electron = {1.0, 0.05, -0.03, 0, 1.0};
  w.em = {0.0, 0.0, 0.4, 0.01, 0.0, 0.0};
  Field U = uniform_field(g, w, p);
  Solver s(g, p);
  const double dt = T / n;
  for (int k = 0; k < n; ++k) s.step(integ, U, k * dt, dt);
  return U;
}

}  // namespace

TEST_SUITE("time_integration") {
  TEST_CASE("a state with L = S = 0 is left unchanged by both integrators") {
    const Grid2D g = Grid2D::make(8, 6, 0, 1, 0, 1, BoundaryKind::Periodic, BoundaryKind::Periodic);
    SolverParams p = params(1.0, -1.0);
    PrimitiveVector w;
    w.ion = w.electron = {1.3, 0, 0, 0, 0.7};
    w.em = {0.2, -0.4, 0.1, 0, 0, 0};
    for (Integrator integ : {Integrator::Explicit, Integrator::IMEX}) {
      Field U = uniform_field(g, w, p);
      const Field U0 = U;
      Solver s(g, p);
      for (int k = 0; k < 5; ++k) s.step(integ, U, 0.01 * k, 0.01);
      CHECK(max_diff(g, U, U0) <= 1e-14);
    }
  }

  TEST_CASE("with vanishing sources IMEX reduces to SSP-RK2") {
    const Grid2D g = Grid2D::make(12, 10, 0, 1, 0, 1, BoundaryKind::Periodic, BoundaryKind::Periodic);
    const SolverParams p = params(0.0, 0.0);
    Field a = smooth_field(g, p), b = a;
    Solver sa(g, p), sb(g, p);
    for (int k = 0; k < 3; ++k) {
      const double dt = 0.3 * sa.compute_dt(a, 1.0);
      sa.ssp_rk2_step(a, k * dt, dt);
      sb.imex_step(b, k * dt, dt);
    }
    CHECK(max_diff(g, a, b) <= 1e-13);
  }

  TEST_CASE("plasma oscillation converges at second order in time") {
    const double T = 2.0;
    for (Integrator integ : {Integrator::Explicit, Integrator::IMEX}) {
      const Field ref = oscillate(integ, 2560, T);
      const Field a = oscillate(integ, 20, T), b = oscillate(integ, 40, T);
      const Grid2D g = Grid2D::make(4, 1, 0, 1, 0, 0.25, BoundaryKind::Periodic, BoundaryKind::Periodic);
      const double ea = max_diff(g, a, ref), eb = max_diff(g, b, ref);
      CAPTURE(to_string(integ));
      CAPTURE(ea);
      CAPTURE(eb);
      CHECK(ea > 1e-9);
      CHECK(std::log2(ea / eb) >= 1.9);
    }
  }

  TEST_CASE("IMEX stays bounded and admissible far beyond the plasma-frequency limit") {
    const Grid2D g = Grid2D::make(4, 1, 0, 1, 0, 0.25, BoundaryKind::Periodic, BoundaryKind::Periodic);
    const double r = 1e4 / std::sqrt(4 * M_PI);
    SolverParams p = params(r, -r);
    p.src.scale = 4 * M_PI;
    PrimitiveVector w;
    w.ion = {1.0, 0.1, 0.0, 0, 1.0};
    w.electron = {1.0, -0.1, 0.0, 0, 1.0};
    w.em = {0.5, 0.0, 0.0, 0.0, 0.0, 0.0};
    Field U = uniform_field(g, w, p);
    Solver s(g, p);
    const double dt = 0.01;  // omega_p dt ~ 1e2
    for (int k = 0; k < 30; ++k) s.imex_step(U, k * dt, dt);
    s.recover(U);
    const PrimitiveVector& q = s.primitives()(0, 0);
    for (const SpeciesPrimitive* sp : {&q.ion, &q.electron}) {
      CHECK(fluid::admissible(*sp));
      CHECK(std::abs(sp->ux) <= 0.1 + 1e-12);
    }
    CHECK(std::abs(U(0, 0)[slot::Ex]) <= 1e-3);
  }

  TEST_CASE("MultiD keeps div B and the Gauss-law residual at round-off every step") {
    RunConfig cfg = case_defaults(CaseId::OrszagTang, Integrator::IMEX);
    cfg.nx = cfg.ny = 16;
    const Grid2D g = make_grid(cfg);
    for (Integrator integ : {Integrator::Explicit, Integrator::IMEX}) {
      cfg.integrator = integ;
      Solver s(g, solver_params(cfg));
      Field U = cases::initial_field(cfg, g);
      double prev = diag::div_norms(diag::divergence_B(g, U), g).L1;
      CHECK(prev <= 1e-14);
      for (int k = 0; k < 6; ++k) {
        const Field Uold = U;
        // explicit steps must also resolve the plasma frequency
        const double dt = s.compute_dt(U, integ == Integrator::IMEX ? 0.4 : 0.05);
        s.step(integ, U, k * dt, dt);
        const double divB = diag::div_norms(diag::divergence_B(g, U), g).L1;
        const double res =
            diag::div_norms(diag::electric_residual(g, U, Uold, s.stage_current(0), s.stage_current(1), dt), g).L1;
        CHECK(std::abs(divB - prev) <= 1e-12);
        CHECK(divB <= 1e-12);
        CHECK(res <= 1e-12);
        prev = divB;
      }
    }
  }

  TEST_CASE("without divergence treatment div B departs from round-off") {
    RunConfig cfg = case_defaults(CaseId::OrszagTang, Integrator::IMEX);
    cfg.nx = cfg.ny = 16;
    cfg.scheme = MaxwellScheme::NoTreatment;
    const Grid2D g = make_grid(cfg);
    Solver s(g, solver_params(cfg));
    Field U = cases::initial_field(cfg, g);
    for (int k = 0; k < 4; ++k) {
      const double dt = s.compute_dt(U, 0.4);
      s.imex_step(U, k * dt, dt);
    }
    CHECK(diag::div_norms(diag::divergence_B(g, U), g).L1 >= 1e-6);
  }

  TEST_CASE("time step follows the CFL formulas") {
    SolverParams p = params(1.0, -1.0);
    PrimitiveVector w;
    w.ion = w.electron = {1.0, 0, 0, 0, 0.1};  // slow sound, light speed dominates
    {
      for (int n : {16, 32}) {
        const Grid2D g = Grid2D::make(n, 1, 0, 1, 0, 1.0 / n, BoundaryKind::Periodic, BoundaryKind::Periodic);
        Field U = uniform_field(g, w, p);
        Solver s(g, p);
        CHECK(s.compute_dt(U, 0.8) == doctest::Approx(0.8 / n).epsilon(1e-14));
      }
    }
    {
      const Grid2D g = Grid2D::make(20, 10, 0, 1, 0, 2, BoundaryKind::Periodic, BoundaryKind::Periodic);
      Field U = uniform_field(g, w, p);
      Solver s(g, p);
      CHECK(s.compute_dt(U, 0.45) == doctest::Approx(0.45 / (1 / g.dx + 1 / g.dy)).epsilon(1e-14));
      SolverParams q = p;
      q.scheme = MaxwellScheme::PHM;
      q.phm = maxwell::PhmParams::make(2.0, 1.0);
      Solver sp(g, q);
      Field V = uniform_field(g, w, q);
      CHECK(sp.compute_dt(V, 0.45) == doctest::Approx(0.45 / (2 / g.dx + 2 / g.dy)).epsilon(1e-14));
    }
  }
}
