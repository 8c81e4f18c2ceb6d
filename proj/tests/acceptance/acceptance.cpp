// Acceptance runs: one PASS/FAIL line per criterion.
#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "rtf/cases.hpp"
#include "rtf/config.hpp"
#include "rtf/diagnostics.hpp"
#include "rtf/driver.hpp"
#include "rtf/es_flux.hpp"
#include "rtf/fluid.hpp"
#include "rtf/maxwell.hpp"

using namespace rtf;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "[x] ") + what;
  }
};

std::string fmt(const char* f, double a) {
  char b[64];
  std::snprintf(b, sizeof b, f, a);
  return b;
}

std::string fmt2(const char* f, double a, double b) {
  char s[128];
  std::snprintf(s, sizeof s, f, a, b);
  return s;
}

RunResult quiet_run(const RunConfig& c) {
  RunOptions o;
  o.write_files = false;
  return run(c, o);
}

RunConfig desk(CaseId id, Integrator integ) {
  RunConfig c = case_defaults(id, integ);
  apply_desk_scale(c);
  return c;
}

// 1 ------------------------------------------------------------------------------------------
Verdict accuracy_1d() {
  Verdict v;
  struct Ref {
    Integrator integ;
    double e256, e512;
  };
  for (const Ref& r : {Ref{Integrator::Explicit, 4.25288e-3, 1.16120e-3}, Ref{Integrator::IMEX, 4.25412e-3, 1.16151e-3}}) {
    const RunConfig c = case_defaults(CaseId::Accuracy1D, r.integ);
    const auto rows = convergence_study(c, {32, 64, 128, 256, 512});
    const std::string tag = to_string(r.integ);
    v.require(rows.back().order >= 1.8, tag + " order(256->512) " + fmt("%.4f", rows.back().order) + " >= 1.8");
    const double rel256 = std::abs(rows[3].error / r.e256 - 1), rel512 = std::abs(rows[4].error / r.e512 - 1);
    v.require(rel256 <= 0.2, tag + " e256 " + fmt2("%.4e (reference %.5e)", rows[3].error, r.e256));
    v.require(rel512 <= 0.2, tag + " e512 " + fmt2("%.4e (reference %.5e)", rows[4].error, r.e512));
  }
  return v;
}

// 2 ------------------------------------------------------------------------------------------
Verdict accuracy_2d() {
  Verdict v;
  RunConfig c = case_defaults(CaseId::Smooth2D, Integrator::IMEX);
  c.t_end = 0.25;
  const auto rows = convergence_study(c, {32, 64, 128});
  v.require(rows.back().order >= 1.6, "order(64->128) " + fmt("%.4f", rows.back().order) + " >= 1.6");
  v.detail += "; errors " + fmt("%.4e", rows[0].error) + fmt(" %.4e", rows[1].error) + fmt(" %.4e", rows[2].error) +
              " at t=0.25";
  return v;
}

// 3 and 4 share the Orszag-Tang runs ---------------------------------------------------------
struct OtRun {
  MaxwellScheme scheme;
  Integrator integ;
  RunResult r;
};

std::vector<OtRun>& ot_runs() {
  static std::vector<OtRun> runs = [] {
    std::vector<OtRun> out;
    for (MaxwellScheme s : {MaxwellScheme::MultiD, MaxwellScheme::NoTreatment, MaxwellScheme::PHM}) {
      for (Integrator in : {Integrator::Explicit, Integrator::IMEX}) {
        RunConfig c = desk(CaseId::OrszagTang, in);
        c.scheme = s;
        c.max_steps = 200;
        c.t_end = 10.0;
        out.push_back({s, in, quiet_run(c)});
      }
    }
    return out;
  }();
  return runs;
}

std::string label(const OtRun& o) { return std::string(to_string(o.scheme)) + "/" + to_string(o.integ); }

Verdict divergence_preservation() {
  Verdict v;
  for (const OtRun& o : ot_runs()) {
    if (o.r.exit_code != 0) {
      v.require(false, label(o) + " failed: " + o.r.message);
      continue;
    }
    v.require(o.r.steps == 200, label(o) + " ran " + std::to_string(o.r.steps) + " steps");
    double worst = 0, dmax = 0;
    for (std::size_t k = 0; k < o.r.norms.size(); ++k) {
      dmax = std::max(dmax, o.r.norms[k].divB_L1);
      if (k) worst = std::max(worst, std::abs(o.r.norms[k].divB_L1 - o.r.norms[k - 1].divB_L1));
    }
    if (o.scheme == MaxwellScheme::MultiD) {
      v.require(worst <= 1e-12, label(o) + " max step change " + fmt("%.2e", worst));
      v.require(dmax <= 1e-12, label(o) + " max divB_L1 " + fmt("%.2e", dmax));
    } else {
      v.require(o.r.norms.back().divB_L1 >= 1e-6, label(o) + " final divB_L1 " + fmt("%.2e", o.r.norms.back().divB_L1));
    }
  }
  return v;
}

Verdict gauss_residual() {
  Verdict v;
  for (const OtRun& o : ot_runs()) {
    if (o.r.exit_code != 0) {
      v.require(false, label(o) + " failed: " + o.r.message);
      continue;
    }
    if (o.scheme == MaxwellScheme::MultiD) {
      double m = 0;
      for (const auto& n : o.r.norms) m = std::max(m, n.divE_res_L1);
      v.require(m <= 1e-12, label(o) + " max residual L1 " + fmt("%.2e", m));
    } else if (o.scheme == MaxwellScheme::NoTreatment) {
      // accumulated Gauss-law defect; per-step values reported alongside
      int drops = 0, step_drops = 0;
      for (std::size_t k = 2; k < o.r.norms.size(); ++k) {
        drops += o.r.norms[k].divE_acc_L1 < o.r.norms[k - 1].divE_acc_L1;
        step_drops += o.r.norms[k].divE_res_L1 < o.r.norms[k - 1].divE_res_L1;
      }
      v.require(drops == 0, label(o) + " accumulated residual L1 " + fmt("%.2e", o.r.norms[1].divE_acc_L1) + " -> " +
                                fmt("%.2e", o.r.norms.back().divE_acc_L1) + ", " + std::to_string(drops) +
                                " decreasing steps (per-step residual: " + std::to_string(step_drops) + ")");
    }
  }
  return v;
}

// 5 ------------------------------------------------------------------------------------------
Verdict current_sheet() {
  Verdict v;
  const RunConfig c = case_defaults(CaseId::CurrentSheet, Integrator::IMEX);
  const RunResult r = quiet_run(c);
  if (r.exit_code != 0) {
    v.require(false, "run failed: " + r.message);
    return v;
  }
  double linf = 0;
  for (int i = 0; i < r.grid.nx; ++i)
    linf = std::max(linf, std::abs(r.U(i, 0)[slot::By] - cases::current_sheet_By(r.grid.xc(i), r.t, c.B0, c.eta)));
  v.require(linf <= 0.01, "L_inf(B_y - erf) at t=9 " + fmt("%.3e", linf) + " <= 0.01");
  return v;
}

// 6 ------------------------------------------------------------------------------------------
Verdict brio_wu() {
  Verdict v;
  auto admissible_everywhere = [](const RunResult& r) {
    for (int i = 0; i < r.grid.nx; ++i) {
      const PrimitiveVector& w = r.W(i, 0);
      for (const SpeciesPrimitive* s : {&w.ion, &w.electron}) {
        const double u2 = s->ux * s->ux + s->uy * s->uy + s->uz * s->uz;
        if (!(s->rho > 0 && s->p > 0 && u2 < 1)) return false;
      }
    }
    return true;
  };
  struct Case {
    Integrator integ;
    double cfl;
  };
  for (const Case& k : {Case{Integrator::IMEX, 0.8}, Case{Integrator::Explicit, 0.2}}) {
    RunConfig c = case_defaults(CaseId::BrioWu, k.integ);
    c.cfl = k.cfl;
    const RunResult r = quiet_run(c);
    const std::string tag = std::string(to_string(k.integ)) + fmt(" cfl %.2g", k.cfl);
    v.require(r.exit_code == 0 && std::abs(r.t - 0.4) < 1e-12, tag + " completes" + (r.exit_code ? ": " + r.message : ""));
    if (r.exit_code == 0) v.require(admissible_everywhere(r), tag + " admissible at t=0.4");
  }
  const double rs = 1e4 / std::sqrt(4 * M_PI);
  long steps[2] = {0, 0};
  const Case stiff[2] = {{Integrator::IMEX, 0.8}, {Integrator::Explicit, 0.02}};
  for (int n = 0; n < 2; ++n) {
    RunConfig c = case_defaults(CaseId::BrioWu, stiff[n].integ);
    c.r_i = rs;
    c.r_e = -rs;
    c.cfl = stiff[n].cfl;
    const RunResult r = quiet_run(c);
    const std::string tag = std::string("r=1e4/sqrt(4pi) ") + to_string(stiff[n].integ) + fmt(" cfl %.2g", stiff[n].cfl);
    v.require(r.exit_code == 0, tag + " completes in " + std::to_string(r.steps) + " steps" +
                                    (r.exit_code ? ": " + r.message : ""));
    if (r.exit_code == 0) v.require(admissible_everywhere(r), tag + " admissible");
    steps[n] = r.steps;
  }
  v.require(steps[0] > 0 && steps[0] < steps[1], "IMEX takes fewer steps than explicit");
  return v;
}

// 7 ------------------------------------------------------------------------------------------
SpeciesPrimitive random_state(std::mt19937_64& rng, double umax) {
  std::uniform_real_distribution<double> lg(std::log(0.05), std::log(20.0)), un(0, 1);
  std::normal_distribution<double> nd(0, 1);
  double d[3] = {nd(rng), nd(rng), nd(rng)};
  const double n = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
  const double m = umax * std::cbrt(un(rng));
  return {std::exp(lg(rng)), m * d[0] / n, m * d[1] / n, m * d[2] / n, std::exp(lg(rng))};
}

Verdict flux_oracles() {
  Verdict v;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ug(1.05, 2.0), ue(-2, 2);
  const int N = 1000;
  double tadmor = 0, sym = 0, cons = 0, dsym = 0, dmin = 1e300, rt = 0;
  for (int n = 0; n < N; ++n) {
    const fluid::GasParams g{ug(rng), 1.0};
    const SpeciesPrimitive L = random_state(rng, 0.9), R = random_state(rng, 0.9);
    for (fluid::Axis d : {fluid::Axis::X, fluid::Axis::Y}) {
      const int k = static_cast<int>(d);
      const fluid::Vec5 F = es::entropy_conservative_flux({L, R, d}, g), Fs = es::entropy_conservative_flux({R, L, d}, g);
      const fluid::Vec5 dV = fluid::entropy_variables(R, g).v - fluid::entropy_variables(L, g).v;
      auto phi = [&](const SpeciesPrimitive& w) { return w.rho * fluid::lorentz_factor(w) * (k == 0 ? w.ux : w.uy); };
      const double dphi = phi(R) - phi(L);
      tadmor = std::max(tadmor, std::abs(dV.dot(F) - dphi) / (std::abs(dphi) + 1));
      sym = std::max(sym, (F - Fs).cwiseAbs().maxCoeff() / (1 + F.cwiseAbs().maxCoeff()));
      const fluid::Vec5 f = es::physical_fluid_flux(L, g, d), Fc = es::entropy_conservative_flux({L, L, d}, g);
      cons = std::max(cons, (Fc - f).cwiseAbs().maxCoeff() / (1 + f.cwiseAbs().maxCoeff()));
      const es::DissipationOperator op = es::build_dissipation({L, R, d}, g);
      dsym = std::max(dsym, (op.D - op.D.transpose()).cwiseAbs().maxCoeff() / op.D.cwiseAbs().maxCoeff());
      const Eigen::SelfAdjointEigenSolver<fluid::Mat5> es(0.5 * (op.D + op.D.transpose()));
      dmin = std::min(dmin, es.eigenvalues().minCoeff() / es.eigenvalues().maxCoeff());
    }
    // con2prim round trip, |u| up to 0.99
    const SpeciesPrimitive w = random_state(rng, 0.99);
    const SpeciesConserved u = fluid::conserved_from_primitive(w, g);
    const SpeciesPrimitive back = fluid::primitive_from_conserved(u, g);
    const double e = std::max({std::abs(back.rho - w.rho) / w.rho, std::abs(back.p - w.p) / w.p, std::abs(back.ux - w.ux),
                               std::abs(back.uy - w.uy), std::abs(back.uz - w.uz)});
    rt = std::max(rt, e);
  }
  v.require(tadmor <= 1e-11, "Tadmor " + fmt("%.1e", tadmor));
  v.require(sym <= 1e-12, "EC symmetry " + fmt("%.1e", sym));
  v.require(cons <= 1e-12, "EC consistency " + fmt("%.1e", cons));
  v.require(dsym <= 1e-12, "D symmetry " + fmt("%.1e", dsym));
  v.require(dmin >= -1e-10, "D min eig ratio " + fmt("%.1e", dmin));
  v.require(rt <= 1e-8, "con2prim round trip " + fmt("%.1e", rt));

  // multidimensional vertex solver vs the 4-state HLL strongly interacting state with speeds -1, +1 on both axes,
  // written directly from the corner fields
  using namespace maxwell;
  double hll = 0;
  for (int n = 0; n < N; ++n) {
    CornerStates c;
    for (EmState* s : {&c.SW, &c.SE, &c.NE, &c.NW}) *s = {ue(rng), ue(rng), ue(rng), ue(rng), ue(rng), ue(rng), 0, 0};
    const EmState &sw = c.SW, &se = c.SE, &ne = c.NE, &nw = c.NW;
    // x flux of Ez is -By, y flux is Bx; x flux of Bz is Ey, y flux is -Ex
    const double ez = 0.25 * ((sw.Ez + se.Ez + ne.Ez + nw.Ez) + (ne.By - nw.By) + (se.By - sw.By) -
                              (ne.Bx - se.Bx) - (nw.Bx - sw.Bx));
    const double bz = 0.25 * ((sw.Bz + se.Bz + ne.Bz + nw.Bz) - (ne.Ey - nw.Ey) - (se.Ey - sw.Ey) +
                              (ne.Ex - se.Ex) + (nw.Ex - sw.Ex));
    const VertexEmValues got = vertex_values_o1(c);
    hll = std::max({hll, std::abs(got.Ez_tilde - ez), std::abs(got.Bz_tilde - bz)});
  }
  v.require(hll <= 1e-13, "multidimensional vs 4-state HLL " + fmt("%.1e", hll));
  return v;
}

// 8 ------------------------------------------------------------------------------------------
Verdict entropy_decay() {
  Verdict v;
  const int n = 200;
  const Grid2D g = Grid2D::make(n, 1, 0, 1, 0, 1.0 / n, BoundaryKind::Periodic, BoundaryKind::Periodic);
  SolverParams p;
  p.ion = fluid::GasParams::make(5.0 / 3.0, 0.0);
  p.electron = fluid::GasParams::make(1.4, 0.0);
  p.src.r_i = p.src.r_e = 0.0;
  Field U(g);
  for (int i = 0; i < n; ++i) {
    const double x = g.xc(i), s = std::sin(2 * M_PI * x);
    U(i, 0).set_species(0, fluid::conserved_from_primitive({1.0 + 0.2 * s, 0.6 * s, 0, 0, 1.0}, p.ion));
    U(i, 0).set_species(1, fluid::conserved_from_primitive({0.5, -0.5 * s, 0.1, 0, 0.8 + 0.3 * s}, p.electron));
  }
  Solver solver(g, p);
  solver.recover(U);
  double S = diag::total_entropy(g, solver.primitives(), p.ion, p.electron);
  const double S0 = S;
  double worst = -1e300, t = 0;
  int steps = 0;
  while (t < 1.0 - 1e-12) {
    double dt = std::min(solver.compute_dt(U, 0.4), 1.0 - t);
    solver.ssp_rk2_step(U, t, dt);
    t += dt;
    ++steps;
    solver.recover(U);
    const double Sn = diag::total_entropy(g, solver.primitives(), p.ion, p.electron);
    worst = std::max(worst, (Sn - S) / std::abs(S));
    S = Sn;
  }
  v.require(worst <= 1e-12, std::to_string(steps) + " steps, max relative entropy increase " + fmt("%.2e", worst));
  v.require(S < S0, "entropy produced by the shocks " + fmt("%.3e", S0 - S));
  return v;
}

// 9 ------------------------------------------------------------------------------------------
Verdict blast() {
  Verdict v;
  for (double B0 : {0.1, 1.0}) {
    for (Integrator in : {Integrator::IMEX, Integrator::Explicit}) {
      RunConfig c = desk(CaseId::Blast, in);
      c.B0 = B0;
      const RunResult r = quiet_run(c);
      const std::string tag = fmt("B0=%.1f ", B0) + to_string(in);
      v.require(r.exit_code == 0, tag + " completes" + (r.exit_code ? ": " + r.message : ""));
      if (r.exit_code) continue;
      double m = 0;
      for (const auto& n : r.norms) m = std::max(m, n.divB_L1);
      v.require(r.flagged_total == 0, tag + " recovery failures " + std::to_string(r.flagged_total));
      v.require(m <= 1e-12, tag + " max divB_L1 " + fmt("%.2e", m));
    }
  }
  return v;
}

// 10 -----------------------------------------------------------------------------------------
Verdict gem() {
  Verdict v;
  const RunConfig c = desk(CaseId::GEM, Integrator::IMEX);
  const RunResult r = quiet_run(c);
  v.require(r.exit_code == 0 && std::abs(r.t - 40.0) < 1e-9, "MultiD run to t=40" + (r.exit_code ? ": " + r.message : ""));
  if (r.exit_code == 0) {
    int drops = 0;
    double worst_drop = 0;
    for (std::size_t k = 1; k < r.psi.size(); ++k) {
      if (r.psi[k] < r.psi[k - 1]) {
        ++drops;
        worst_drop = std::max(worst_drop, r.psi[k - 1] - r.psi[k]);
      }
    }
    const auto mn = std::min_element(r.psi.begin(), r.psi.end());
    v.require(drops == 0, "psi " + fmt("%.4f", r.psi.front()) + " -> " + fmt("%.4f", r.psi.back()) + ", " +
                              std::to_string(drops) + " decreasing steps (largest " + fmt("%.1e", worst_drop) +
                              "), min " + fmt("%.4f", *mn) + " at t=" +
                              fmt("%.2f", r.norms[std::size_t(mn - r.psi.begin())].time));
    double b = 0, e = 0;
    for (const auto& n : r.norms) {
      b = std::max(b, n.divB_L1);
      e = std::max(e, n.divE_res_L1);
    }
    v.require(b <= 1e-12, "MultiD max divB_L1 " + fmt("%.2e", b));
    v.require(e <= 1e-12, "MultiD max Gauss residual L1 " + fmt("%.2e", e));
  }
  for (MaxwellScheme s : {MaxwellScheme::PHM, MaxwellScheme::NoTreatment}) {
    RunConfig cb = c;
    cb.scheme = s;
    cb.t_end = 10.0;
    const RunResult rb = quiet_run(cb);
    const std::string tag = std::string(to_string(s)) + " to t=10";
    v.require(rb.exit_code == 0, tag + " completes" + (rb.exit_code ? ": " + rb.message : ""));
    if (rb.exit_code == 0)
      v.require(rb.norms.back().divB_L1 >= 1e-6, tag + " divB_L1 " + fmt("%.2e", rb.norms.back().divB_L1));
  }
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<int> only;
  app.add_option("--only", only, "criterion numbers to run (default: all)")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"accuracy1d convergence", accuracy_1d},
      {"smooth2d convergence", accuracy_2d},
      {"divergence preservation (Orszag-Tang)", divergence_preservation},
      {"Gauss-law residual (Orszag-Tang)", gauss_residual},
      {"resistive current sheet", current_sheet},
      {"Brio-Wu stability and step counts", brio_wu},
      {"flux algebra oracles", flux_oracles},
      {"entropy decay", entropy_decay},
      {"blast robustness", blast},
      {"GEM reconnection", gem},
  };
  const std::set<int> sel(only.begin(), only.end());
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = int(k) + 1;
    if (!sel.empty() && !sel.count(id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[k].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %d (%s): %s [%.1f s]\n", v.pass ? "PASS" : "FAIL", id, criteria[k].first,
                v.detail.c_str(), sec);
    std::fflush(stdout);
    failed += !v.pass;
  }
  return failed ? 1 : 0;
}
