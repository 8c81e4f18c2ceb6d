#pragma once

#include <array>
#include <string>

#include "rtf/es_flux.hpp"
#include "rtf/fluid.hpp"
#include "rtf/grid.hpp"
#include "rtf/maxwell.hpp"
#include "rtf/sources.hpp"
#include "rtf/state.hpp"

namespace rtf {

enum class MaxwellScheme { MultiD, PHM, NoTreatment };
enum class Integrator { Explicit, IMEX };

MaxwellScheme parse_maxwell_scheme(const std::string& s);
Integrator parse_integrator(const std::string& s);
const char* to_string(MaxwellScheme s);
const char* to_string(Integrator s);

using Field = FieldArray<ConservedVector>;
using PrimField = FieldArray<PrimitiveVector>;
using Vec3 = std::array<double, 3>;
using CurrentField = FieldArray<Vec3>;

struct SolverParams {
  fluid::GasParams ion, electron;
  sources::SourceParams src;
  maxwell::PhmParams phm;
  MaxwellScheme scheme = MaxwellScheme::MultiD;
  int order = 2;  // 1 or 2, used for both the fluid and the Maxwell part
  fluid::RecoveryOptions recovery;
  sources::ImplicitOptions implicit;
  double max_flagged_fraction = 0.01;
};

struct StepReport {
  double t = 0;
  double dt = 0;
  double lambda_x = 0, lambda_y = 0;  // max wave speeds at t^n
  int newton_max = 0;
  long newton_total = 0;
  int flagged = 0;  // cells reset from floored primitives
};

class Solver {
 public:
  Solver(const Grid2D& grid, const SolverParams& p);

  const Grid2D& grid() const { return grid_; }
  const SolverParams& params() const { return p_; }

  // Recovers primitives of U (interior, warm started) and fills their ghosts. Floored cells are
  // rewritten in U; throws RecoveryError once more than max_flagged_fraction of cells are flagged.
  int recover(Field& U);
  const PrimField& primitives() const { return W_; }

  double compute_dt(Field& U, double cfl);

  // L(U) from the current primitives; only the interior of out is written.
  void spatial_operator(Field& out);
  // Convenience: recover, then L.
  void spatial_operator(Field& U, Field& out);

  // S(U) + R(x, y, t) from the current primitives (interior).
  void source(double t, Field& out);

  StepReport ssp_rk2_step(Field& U, double t, double dt);
  StepReport imex_step(Field& U, double t, double dt);
  StepReport step(Integrator integ, Field& U, double t, double dt) {
    return integ == Integrator::Explicit ? ssp_rk2_step(U, t, dt) : imex_step(U, t, dt);
  }

  // scale * J of the two stages used by the Gauss-law residual of the last step:
  // (U^n, U^(1)) for the explicit scheme and (U^(1), U^(2)) for IMEX.
  const CurrentField& stage_current(int k) const { return k == 0 ? Ja_ : Jb_; }

 private:
  void build_caches();
  void fluid_fluxes();
  void maxwell_fluxes();
  void assemble(Field& out) const;
  void store_current(CurrentField& J) const;
  void set_primitive_ghosts();

  Grid2D grid_;
  SolverParams p_;
  PrimField W_;
  FieldArray<es::CellCache> ci_, ce_;
  Field Fx_, Fy_;
  VertexArray<maxwell::VertexEmValues> vv_;
  Field L0_, L1_, S0_, S1_, U1_, U2_;
  CurrentField Ja_, Jb_;
  bool have_guess_ = false;
};

}  // namespace rtf
