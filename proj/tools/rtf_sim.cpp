// rtf_sim: run | convergence | inspect
#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "rtf/config.hpp"
#include "rtf/driver.hpp"
#include "rtf/errors.hpp"

namespace {

int cmd_run(const std::string& path, const std::vector<std::string>& overrides, bool paper_scale, bool quiet) {
  rtf::RunConfig cfg = rtf::parse_config(path);
  for (const auto& o : overrides) rtf::apply_override(cfg, o);
  if (!paper_scale) rtf::apply_desk_scale(cfg);
  std::fprintf(stderr, "case %s  %dx%d  t=[%g, %g]  cfl %g  %s %s\n", rtf::to_string(cfg.test_case), cfg.nx, cfg.ny,
               cfg.t_start, cfg.t_end, cfg.cfl, rtf::to_string(cfg.scheme), rtf::to_string(cfg.integrator));
  rtf::RunOptions opt;
  opt.quiet = quiet;
  const rtf::RunResult r = rtf::run(cfg, opt);
  if (r.exit_code != 0) {
    std::fprintf(stderr, "error: %s\n", r.message.c_str());
    return r.exit_code;
  }
  const auto& last = r.norms.back();
  std::printf("done: %ld steps, t = %.6g, divB L2 = %.3e, divE residual L2 = %.3e, output in %s\n", r.steps, r.t,
              last.divB_L2, last.divE_res_L2, cfg.output_dir.c_str());
  return 0;
}

int cmd_convergence(const std::string& case_name, const std::string& integ, const std::string& scheme,
                    const std::vector<int>& cells, double t_end, double cfl) {
  const rtf::CaseId c = rtf::parse_case(case_name);
  const rtf::Integrator in = rtf::parse_integrator(integ);
  rtf::RunConfig cfg = rtf::case_defaults(c, in);
  cfg.scheme = rtf::parse_maxwell_scheme(scheme);
  if (t_end > 0) cfg.t_end = t_end;
  if (cfl > 0) cfg.cfl = cfl;
  std::cout << rtf::convergence_csv(rtf::convergence_study(cfg, cells));
  return 0;
}

int cmd_inspect(const std::string& path) {
  const rtf::Snapshot s = rtf::read_snapshot(path);
  std::printf("grid %d x %d  dx %.6g  dy %.6g  time %.10g\n", s.nx, s.ny, s.dx, s.dy, s.time);
  static const char* names[rtf::kSnapshotColumns] = {
      "D_i",   "Mx_i",  "My_i",  "Mz_i",  "E_i",   "D_e",   "Mx_e",  "My_e", "Mz_e",
      "E_e",   "Bx",    "By",    "Bz",    "Ex",    "Ey",    "Ez",    "rho_i", "ux_i",
      "uy_i",  "uz_i",  "p_i",   "rho_e", "ux_e",  "uy_e",  "uz_e",  "p_e"};
  std::printf("%-6s %14s %14s %14s\n", "field", "min", "max", "mean");
  for (int k = 0; k < rtf::kSnapshotColumns; ++k) {
    double lo = INFINITY, hi = -INFINITY, sum = 0;
    for (const auto& r : s.rows) {
      lo = std::min(lo, r[k]);
      hi = std::max(hi, r[k]);
      sum += r[k];
    }
    std::printf("%-6s %14.6e %14.6e %14.6e\n", names[k], lo, hi, sum / double(s.rows.size()));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-fluid relativistic plasma simulator"};
  app.require_subcommand(1);

  std::string config;
  std::vector<std::string> overrides;
  bool paper_scale = false, quiet = false;
  auto* run = app.add_subcommand("run", "run a simulation from a config file");
  run->add_option("--config", config, "config file")->required()->check(CLI::ExistingFile);
  run->add_option("--override", overrides, "section.key=value (repeatable)");
  run->add_flag("--paper-scale", paper_scale, "use full paper resolutions and final times");
  run->add_flag("-q,--quiet", quiet, "no progress output");

  std::string case_name, integ = "imex", scheme = "multid";
  std::vector<int> cells;
  double t_end = 0, conv_cfl = 0;
  auto* conv = app.add_subcommand("convergence", "grid convergence study of a manufactured case");
  conv->add_option("--case", case_name, "accuracy1d or smooth2d")->required();
  conv->add_option("--integrator", integ, "explicit or imex");
  conv->add_option("--scheme", scheme, "multid, phm or notreatment");
  conv->add_option("--cells", cells, "comma separated resolutions")->required()->delimiter(',');
  conv->add_option("--t-end", t_end, "final time (case default if omitted)");
  conv->add_option("--cfl", conv_cfl, "CFL number (case default if omitted)");

  std::string snap;
  auto* insp = app.add_subcommand("inspect", "summarise a snapshot");
  insp->add_option("--snapshot", snap, "snapshot file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*run) return cmd_run(config, overrides, paper_scale, quiet);
    if (*conv) return cmd_convergence(case_name, integ, scheme, cells, t_end, conv_cfl);
    if (*insp) return cmd_inspect(snap);
  } catch (const rtf::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const rtf::AdmissibilityError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const rtf::StiffSolveError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const rtf::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
