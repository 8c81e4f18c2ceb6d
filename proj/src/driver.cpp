#include "rtf/driver.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "rtf/cases.hpp"
#include "rtf/errors.hpp"

namespace rtf {

namespace {

std::array<double, kSnapshotColumns> snapshot_row(const ConservedVector& u, const PrimitiveVector& w) {
  std::array<double, kSnapshotColumns> r{};
  for (std::size_t k = 0; k < kNumVars; ++k) r[k] = u[k];
  const SpeciesPrimitive* s[2] = {&w.ion, &w.electron};
  for (int a = 0; a < 2; ++a) {
    const int b = 16 + 5 * a;
    r[b] = s[a]->rho;
    r[b + 1] = s[a]->ux;
    r[b + 2] = s[a]->uy;
    r[b + 3] = s[a]->uz;
    r[b + 4] = s[a]->p;
  }
  return r;
}

void put_le(std::ostream& out, double v) {
  std::uint64_t bits;
  static_assert(sizeof bits == sizeof v);
  std::memcpy(&bits, &v, sizeof v);
  unsigned char b[8];
  for (int k = 0; k < 8; ++k) b[k] = static_cast<unsigned char>(bits >> (8 * k));
  out.write(reinterpret_cast<const char*>(b), 8);
}

double get_le(std::istream& in) {
  unsigned char b[8];
  if (!in.read(reinterpret_cast<char*>(b), 8)) throw Error("snapshot: truncated binary file");
  std::uint64_t bits = 0;
  for (int k = 0; k < 8; ++k) bits |= std::uint64_t(b[k]) << (8 * k);
  double v;
  std::memcpy(&v, &bits, sizeof v);
  return v;
}

std::string csv_header(bool gem) {
  std::string h = "step,time,dt,divB_L1,divB_L2,divEres_L1,divEres_L2,divEacc_L1,divEacc_L2,total_entropy";
  if (gem) h += ",psi_flux";
  return h;
}

std::string csv_row(const diag::DivergenceReport& r, bool gem, double psi) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%ld,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g", r.step, r.time, r.dt,
                r.divB_L1, r.divB_L2, r.divE_res_L1, r.divE_res_L2, r.divE_acc_L1, r.divE_acc_L2, r.total_entropy);
  std::string s = buf;
  if (gem) {
    std::snprintf(buf, sizeof buf, ",%.17g", psi);
    s += buf;
  }
  return s;
}

}  // namespace

void write_snapshot_text(const std::string& path, const Grid2D& g, const Field& U, const PrimField& W, double t) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write snapshot '" + path + "'");
  char buf[64];
  out << g.nx << " " << g.ny;
  for (double v : {g.dx, g.dy, t}) {
    std::snprintf(buf, sizeof buf, " %.17g", v);
    out << buf;
  }
  out << "\n";
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const auto r = snapshot_row(U(i, j), W(i, j));
      for (int k = 0; k < kSnapshotColumns; ++k) {
        std::snprintf(buf, sizeof buf, k ? " %.17g" : "%.17g", r[k]);
        out << buf;
      }
      out << "\n";
    }
  }
}

void write_snapshot_binary(const std::string& path, const Grid2D& g, const Field& U, const PrimField& W, double t) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write snapshot '" + path + "'");
  for (double v : {double(g.nx), double(g.ny), g.dx, g.dy, t}) put_le(out, v);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      for (double v : snapshot_row(U(i, j), W(i, j))) put_le(out, v);
}

Snapshot read_snapshot(const std::string& path) {
  Snapshot s;
  const bool binary = path.size() > 4 && path.substr(path.size() - 4) == ".bin";
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  if (!in) throw Error("cannot open snapshot '" + path + "'");
  if (binary) {
    s.nx = int(get_le(in));
    s.ny = int(get_le(in));
    s.dx = get_le(in);
    s.dy = get_le(in);
    s.time = get_le(in);
  } else if (!(in >> s.nx >> s.ny >> s.dx >> s.dy >> s.time)) {
    throw Error("snapshot '" + path + "': bad header");
  }
  if (s.nx < 1 || s.ny < 1) throw Error("snapshot '" + path + "': bad dimensions");
  s.rows.resize(std::size_t(s.nx) * s.ny);
  for (auto& r : s.rows) {
    for (auto& v : r) {
      if (binary) {
        v = get_le(in);
      } else if (!(in >> v)) {
        throw Error("snapshot '" + path + "': truncated");
      }
    }
  }
  return s;
}

RunResult run(const RunConfig& cfg, const RunOptions& opt) {
  RunResult res;
  const bool gem = cfg.test_case == CaseId::GEM;
  std::ofstream norms_csv, steplog;
  std::filesystem::path dir(cfg.output_dir);
  try {
    res.grid = make_grid(cfg);
    const Grid2D& g = res.grid;
    Solver solver(g, solver_params(cfg));
    const SolverParams& sp = solver.params();
    res.U = cases::initial_field(cfg, g);
    Field& U = res.U;
    Field Uold = U;

    if (opt.write_files) {
      std::filesystem::create_directories(dir);
      norms_csv.open(dir / "norms.csv");
      steplog.open(dir / "steps.log");
      norms_csv << csv_header(gem) << "\n";
      steplog << "# step time dt newton_max newton_total flagged\n";
      std::ofstream(dir / "config.used") << serialize_config(cfg);
    }
    auto snapshot = [&](const std::string& stem) {
      if (!opt.write_files) return;
      if (cfg.snapshot_format == "text" || cfg.snapshot_format == "both")
        write_snapshot_text((dir / (stem + ".txt")).string(), g, U, solver.primitives(), res.t);
      if (cfg.snapshot_format == "binary" || cfg.snapshot_format == "both")
        write_snapshot_binary((dir / (stem + ".bin")).string(), g, U, solver.primitives(), res.t);
    };

    double t = cfg.t_start;
    res.t = t;
    res.flagged_total += solver.recover(U);
    diag::DivergenceReport row;
    row.time = t;
    const diag::Norms b0 = diag::div_norms(diag::divergence_B(g, U), g);
    row.divB_L1 = b0.L1;
    row.divB_L2 = b0.L2;
    row.total_entropy = diag::total_entropy(g, solver.primitives(), sp.ion, sp.electron);
    double psi = gem ? diag::reconnected_flux(g, U, cfg.B0) : std::numeric_limits<double>::quiet_NaN();
    res.norms.push_back(row);
    if (gem) res.psi.push_back(psi);
    if (opt.write_files) norms_csv << csv_row(row, gem, psi) << "\n";
    if (cfg.snapshot_every > 0) snapshot("snap_000000");

    VertexArray<double> acc(g, 0.0);
    long step = 0;
    const double eps = 1e-12 * std::max(1.0, std::abs(cfg.t_end));
    while (t < cfg.t_end - eps && (cfg.max_steps <= 0 || step < cfg.max_steps)) {
      double dt = solver.compute_dt(U, cfg.cfl);
      if (t + dt > cfg.t_end) dt = cfg.t_end - t;
      Uold = U;
      const StepReport sr = solver.step(cfg.integrator, U, t, dt);
      t += dt;
      ++step;
      res.t = t;
      res.steps = step;
      res.newton_total += sr.newton_total;
      res.flagged_total += sr.flagged;
      res.flagged_total += solver.recover(U);

      row = {};
      row.step = step;
      row.time = t;
      row.dt = dt;
      const diag::Norms nb = diag::div_norms(diag::divergence_B(g, U), g);
      row.divB_L1 = nb.L1;
      row.divB_L2 = nb.L2;
      const VertexArray<double> rE =
          diag::electric_residual(g, U, Uold, solver.stage_current(0), solver.stage_current(1), dt);
      const diag::Norms ne = diag::div_norms(rE, g);
      row.divE_res_L1 = ne.L1;
      row.divE_res_L2 = ne.L2;
      for (std::size_t k = 0; k < acc.size(); ++k) acc.raw()[k] += rE.raw()[k];
      const diag::Norms na = diag::div_norms(acc, g);
      row.divE_acc_L1 = na.L1;
      row.divE_acc_L2 = na.L2;
      row.total_entropy = diag::total_entropy(g, solver.primitives(), sp.ion, sp.electron);
      if (gem) psi = diag::reconnected_flux(g, U, cfg.B0);
      res.norms.push_back(row);
      if (gem) res.psi.push_back(psi);
      if (opt.write_files) {
        norms_csv << csv_row(row, gem, psi) << "\n";
        char buf[256];
        std::snprintf(buf, sizeof buf, "%ld %.10g %.6e %d %ld %d\n", step, t, dt, sr.newton_max, sr.newton_total,
                      sr.flagged);
        steplog << buf;
      }
      if (!opt.quiet && step % 50 == 0) std::fprintf(stderr, "step %ld t=%.5g dt=%.3e\n", step, t, dt);
      if (opt.on_step) opt.on_step({step, t, U, solver, row, sr, psi});
      if (cfg.snapshot_every > 0 && step % cfg.snapshot_every == 0) {
        char stem[32];
        std::snprintf(stem, sizeof stem, "snap_%06ld", step);
        snapshot(stem);
      }
    }
    res.W = solver.primitives();
    if (cfg.final_dump) snapshot("final");
  } catch (const ConfigError& e) {
    res.exit_code = 2;
    res.message = e.what();
  } catch (const RecoveryError& e) {
    res.exit_code = 3;
    res.message = std::string(e.what()) + " at cell (" + std::to_string(e.cell_i) + ", " + std::to_string(e.cell_j) + ")";
  } catch (const StiffSolveError& e) {
    res.exit_code = 3;
    char buf[128];
    std::snprintf(buf, sizeof buf, " at cell (%d, %d), stage %d, residual %.3e", e.cell_i, e.cell_j, e.stage,
                  e.residual);
    res.message = e.what() + std::string(buf);
  } catch (const AdmissibilityError& e) {
    res.exit_code = 3;
    res.message = e.what();
  }
  if (res.exit_code == 3 && opt.write_files && res.U.size() > 0) {
    // partial dump of the last state (conserved only is meaningful; primitives left zero)
    try {
      write_snapshot_text((dir / "partial.txt").string(), res.grid, res.U, PrimField(res.grid), res.t);
    } catch (const std::exception&) {
    }
  }
  return res;
}

std::vector<ConvergenceRow> convergence_study(const RunConfig& base, const std::vector<int>& cells) {
  if (base.test_case != CaseId::Accuracy1D && base.test_case != CaseId::Smooth2D) {
    throw ConfigError("convergence studies need a manufactured case (accuracy1d or smooth2d)");
  }
  std::vector<ConvergenceRow> rows;
  for (int n : cells) {
    RunConfig c = base;
    c.nx = n;
    c.ny = base.one_d() ? 1 : n;
    c.final_dump = false;
    c.snapshot_every = 0;
    RunOptions opt;
    opt.write_files = false;
    const RunResult r = run(c, opt);
    if (r.exit_code != 0) throw Error("convergence run at " + std::to_string(n) + " cells failed: " + r.message);
    const Grid2D& g = r.grid;
    ConvergenceRow row;
    row.cells = n;
    row.steps = r.steps;
    row.error = diag::convergence_error(
        g, [&](int i, int j) { return r.W(i, j).ion.rho; },
        [&](double x, double y) { return cases::exact_rho_i(c.test_case, x, y, r.t); });
    row.order = rows.empty() ? std::numeric_limits<double>::quiet_NaN()
                             : diag::observed_order(rows.back().error, row.error, double(n) / rows.back().cells);
    rows.push_back(row);
  }
  return rows;
}

std::string convergence_csv(const std::vector<ConvergenceRow>& rows) {
  std::ostringstream out;
  out << "cells,l1_error,order,steps\n";
  char buf[128];
  for (const auto& r : rows) {
    if (std::isnan(r.order)) {
      std::snprintf(buf, sizeof buf, "%d,%.6e,,%ld\n", r.cells, r.error, r.steps);
    } else {
      std::snprintf(buf, sizeof buf, "%d,%.6e,%.4f,%ld\n", r.cells, r.error, r.order, r.steps);
    }
    out << buf;
  }
  return out.str();
}

}  // namespace rtf
