#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rtf/solver.hpp"

namespace rtf {

enum class CaseId { Accuracy1D, BrioWu, CurrentSheet, Smooth2D, OrszagTang, Blast, GEM };

CaseId parse_case(const std::string& s);
const char* to_string(CaseId c);
const std::vector<std::string>& case_names();

struct RunConfig {
  CaseId test_case = CaseId::OrszagTang;
  MaxwellScheme scheme = MaxwellScheme::MultiD;
  Integrator integrator = Integrator::IMEX;
  int order = 2;
  double cfl = 0;  // resolved from the case and integrator unless given
  double t_start = 0, t_end = 1;
  int nx = 1, ny = 1;
  long max_steps = 0;  // 0: no limit

  double gamma_i = 5.0 / 3.0, gamma_e = 5.0 / 3.0;
  double r_i = 1, r_e = -1, eta = 0, maxwell_source_scale = 1;
  double kappa = 1, xi = 1;

  // case knobs
  double B0 = 1;
  double psi0 = 0.1;
  double gem_pressure_factor = 0;
  double gem_uz_sign = -1;
  double gem_mode = 1;  // perturbation wavenumber in x is gem_mode * pi / Lx

  double newton_tol = 1e-10;
  int newton_max_iter = 50;
  double max_flagged_fraction = 0.01;

  std::string output_dir = "out";
  int snapshot_every = 0;  // steps; 0 disables periodic snapshots
  std::string snapshot_format = "text";  // text | binary | both
  bool final_dump = true;

  // keys given explicitly (file or overrides), as section.key
  std::set<std::string> explicit_keys;

  bool is_set(const std::string& key) const { return explicit_keys.count(key) > 0; }
  bool one_d() const { return ny == 1; }
};

// Full-scale defaults for a case (resolution, final time, physics constants, CFL for the integrator).
RunConfig case_defaults(CaseId c, Integrator integ);

// key = value text with optional [section] headers; '#' starts a comment.
RunConfig parse_config_text(const std::string& text, const std::string& origin = "<string>");
RunConfig parse_config(const std::string& path);
// Applies section.key=value (or a bare key) overrides on top of cfg and re-resolves dependent defaults.
void apply_override(RunConfig& cfg, const std::string& assignment);
std::string serialize_config(const RunConfig& cfg);

// Reduced resolutions and final times for a desk run; keys set explicitly are left alone.
void apply_desk_scale(RunConfig& cfg);

SolverParams solver_params(const RunConfig& cfg);
Grid2D make_grid(const RunConfig& cfg);

}  // namespace rtf
