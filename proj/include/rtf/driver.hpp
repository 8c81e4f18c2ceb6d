#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "rtf/config.hpp"
#include "rtf/diagnostics.hpp"
#include "rtf/solver.hpp"

namespace rtf {

// Snapshot columns: 16 conserved slots (D_i m_i E_i D_e m_e E_e B E) then
// rho_i ux_i uy_i uz_i p_i rho_e ux_e uy_e uz_e p_e.
inline constexpr int kSnapshotColumns = 26;

struct Snapshot {
  int nx = 0, ny = 0;
  double dx = 0, dy = 0, time = 0;
  std::vector<std::array<double, kSnapshotColumns>> rows;  // row-major, i fastest
};

void write_snapshot_text(const std::string& path, const Grid2D& g, const Field& U, const PrimField& W, double t);
void write_snapshot_binary(const std::string& path, const Grid2D& g, const Field& U, const PrimField& W, double t);
// Reads either format; binary is detected by the .bin extension.
Snapshot read_snapshot(const std::string& path);

struct StepInfo {
  long step;
  double t;
  const Field& U;
  const Solver& solver;
  const diag::DivergenceReport& norms;
  const StepReport& report;
  double psi_flux;  // NaN unless GEM
};

struct RunOptions {
  bool write_files = true;
  bool quiet = true;
  std::function<void(const StepInfo&)> on_step;
};

struct RunResult {
  int exit_code = 0;  // 0 ok, 2 config error, 3 admissibility / stiff-solve failure
  std::string message;
  long steps = 0;
  double t = 0;
  Grid2D grid;
  std::vector<diag::DivergenceReport> norms;  // row 0 is the initial state
  std::vector<double> psi;                    // GEM only, aligned with norms
  long newton_total = 0;
  int flagged_total = 0;
  Field U;
  PrimField W;
};

RunResult run(const RunConfig& cfg, const RunOptions& opt = {});

struct ConvergenceRow {
  int cells = 0;
  double error = 0;
  double order = 0;  // NaN on the first row
  long steps = 0;
};

// L1 error of rho_i at t_end for each resolution (nx, and ny = nx for 2-D cases).
std::vector<ConvergenceRow> convergence_study(const RunConfig& base, const std::vector<int>& cells);
std::string convergence_csv(const std::vector<ConvergenceRow>& rows);

}  // namespace rtf
