#include "rtf/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rtf/errors.hpp"

namespace rtf {

MaxwellScheme parse_maxwell_scheme(const std::string& s) {
  if (s == "MultiD" || s == "multid") return MaxwellScheme::MultiD;
  if (s == "PHM" || s == "phm") return MaxwellScheme::PHM;
  if (s == "NoTreatment" || s == "notreatment") return MaxwellScheme::NoTreatment;
  throw ConfigError("unknown maxwell scheme '" + s + "' (valid: MultiD, PHM, NoTreatment)");
}

Integrator parse_integrator(const std::string& s) {
  if (s == "Explicit" || s == "explicit") return Integrator::Explicit;
  if (s == "IMEX" || s == "imex") return Integrator::IMEX;
  throw ConfigError("unknown integrator '" + s + "' (valid: Explicit, IMEX)");
}

const char* to_string(MaxwellScheme s) {
  switch (s) {
    case MaxwellScheme::MultiD: return "MultiD";
    case MaxwellScheme::PHM: return "PHM";
    case MaxwellScheme::NoTreatment: return "NoTreatment";
  }
  return "?";
}

const char* to_string(Integrator s) { return s == Integrator::Explicit ? "Explicit" : "IMEX"; }

Solver::Solver(const Grid2D& grid, const SolverParams& p)
    : grid_(grid), p_(p), W_(grid), ci_(grid), ce_(grid), Fx_(grid), Fy_(grid), vv_(grid), L0_(grid),
      L1_(grid), S0_(grid), S1_(grid), U1_(grid), U2_(grid), Ja_(grid), Jb_(grid) {
  if (p.order != 1 && p.order != 2) throw ConfigError("order must be 1 or 2");
  if (grid.ghost < 2) throw ConfigError("solver needs two ghost layers");
  p_.src.phm = p.scheme == MaxwellScheme::PHM;
  p_.src.xi = p.phm.xi;
}

void Solver::set_primitive_ghosts() { fill_ghosts(W_, grid_); }

int Solver::recover(Field& U) {
  const int nx = grid_.nx, ny = grid_.ny;
  int flagged = 0, fi = -1, fj = -1;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      ConservedVector& u = U(i, j);
      PrimitiveVector& w = W_(i, j);
      bool reset = false;
      for (int s = 0; s < 2; ++s) {
        const fluid::GasParams& g = s == 0 ? p_.ion : p_.electron;
        const double guess = have_guess_ ? w.species(s).p : -1.0;
        const fluid::RecoveryResult r = fluid::recover(u.species(s), g, p_.recovery, guess);
        if (!r.ok) throw RecoveryError("primitive recovery failed", i, j);
        w.species(s) = r.w;
        if (r.floored) {
          u.set_species(s, fluid::conserved_from_primitive(r.w, g));
          reset = true;
        }
      }
      w.em = u.em();
      if (reset) {
        if (flagged == 0) {
          fi = i;
          fj = j;
        }
        ++flagged;
      }
    }
  }
  have_guess_ = true;
  if (flagged > p_.max_flagged_fraction * double(grid_.cells())) {
    throw RecoveryError("too many cells needed floors (" + std::to_string(flagged) + ")", fi, fj);
  }
  set_primitive_ghosts();
  return flagged;
}

double Solver::compute_dt(Field& U, double cfl) {
  recover(U);
  double smax = 1.0;
  if (p_.scheme == MaxwellScheme::PHM) smax = std::max({1.0, p_.phm.kappa, p_.phm.xi});
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < grid_.ny; ++j) {
    for (int i = 0; i < grid_.nx; ++i) {
      const PrimitiveVector& w = W_(i, j);
      double lx = smax, ly = smax;
      for (int s = 0; s < 2; ++s) {
        const fluid::GasParams& g = s == 0 ? p_.ion : p_.electron;
        lx = std::max(lx, fluid::max_abs_eigenvalue(w.species(s), g, fluid::Axis::X));
        ly = std::max(ly, fluid::max_abs_eigenvalue(w.species(s), g, fluid::Axis::Y));
      }
      if (!std::isfinite(lx) || !std::isfinite(ly)) throw AdmissibilityError("non-finite wave speed");
      const double c = grid_.one_d() ? grid_.dx / lx : 1.0 / (lx / grid_.dx + ly / grid_.dy);
      best = std::min(best, c);
    }
  }
  return cfl * best;
}

void Solver::build_caches() {
  const int ng = grid_.ghost;
  const int jlo = grid_.one_d() ? 0 : -ng, jhi = grid_.one_d() ? 1 : grid_.ny + ng;
  for (int j = jlo; j < jhi; ++j) {
    for (int i = -ng; i < grid_.nx + ng; ++i) {
      ci_(i, j) = es::make_cache(W_(i, j).ion, p_.ion);
      ce_(i, j) = es::make_cache(W_(i, j).electron, p_.electron);
    }
  }
}

namespace {

inline void put5(ConservedVector& F, std::size_t base, const es::Vec5& f) {
  for (int k = 0; k < 5; ++k) F[base + k] = f[k];
}

}  // namespace

void Solver::fluid_fluxes() {
  const int nx = grid_.nx, ny = grid_.ny;
  const bool o2 = p_.order == 2;
  for (int j = 0; j < ny; ++j) {
    for (int i = -1; i < nx; ++i) {
      ConservedVector& F = Fx_(i, j);
      if (o2) {
        put5(F, slot::Di, es::es_flux_cached_o2(ci_(i - 1, j), ci_(i, j), ci_(i + 1, j), ci_(i + 2, j), p_.ion, 0));
        put5(F, slot::De,
             es::es_flux_cached_o2(ce_(i - 1, j), ce_(i, j), ce_(i + 1, j), ce_(i + 2, j), p_.electron, 0));
      } else {
        put5(F, slot::Di, es::es_flux_cached_o1(ci_(i, j), ci_(i + 1, j), p_.ion, 0));
        put5(F, slot::De, es::es_flux_cached_o1(ce_(i, j), ce_(i + 1, j), p_.electron, 0));
      }
    }
  }
  if (grid_.one_d()) return;
  for (int j = -1; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      ConservedVector& F = Fy_(i, j);
      if (o2) {
        put5(F, slot::Di, es::es_flux_cached_o2(ci_(i, j - 1), ci_(i, j), ci_(i, j + 1), ci_(i, j + 2), p_.ion, 1));
        put5(F, slot::De,
             es::es_flux_cached_o2(ce_(i, j - 1), ce_(i, j), ce_(i, j + 1), ce_(i, j + 2), p_.electron, 1));
      } else {
        put5(F, slot::Di, es::es_flux_cached_o1(ci_(i, j), ci_(i, j + 1), p_.ion, 1));
        put5(F, slot::De, es::es_flux_cached_o1(ce_(i, j), ce_(i, j + 1), p_.electron, 1));
      }
    }
  }
}

void Solver::maxwell_fluxes() {
  using namespace maxwell;
  const int nx = grid_.nx, ny = grid_.ny;
  const bool o2 = p_.order == 2;
  auto em = [&](int i, int j) -> const EmState& { return W_(i, j).em; };
  auto put6 = [](ConservedVector& F, const Em6& f) {
    for (int k = 0; k < 6; ++k) F[slot::Bx + k] = f[k];
  };
  auto traces_x = [&](int i, int j, EmState& m, EmState& p) {
    if (o2) {
      m = trace_left(em(i - 1, j), em(i, j), em(i + 1, j));
      p = trace_right(em(i, j), em(i + 1, j), em(i + 2, j));
    } else {
      m = em(i, j);
      p = em(i + 1, j);
    }
  };
  auto traces_y = [&](int i, int j, EmState& m, EmState& p) {
    if (o2) {
      m = trace_left(em(i, j - 1), em(i, j), em(i, j + 1));
      p = trace_right(em(i, j), em(i, j + 1), em(i, j + 2));
    } else {
      m = em(i, j);
      p = em(i, j + 1);
    }
  };

  if (p_.scheme == MaxwellScheme::MultiD) {
    // vertex (a, b) is surrounded by cells SW=(a-1,b-1), SE=(a,b-1), NE=(a,b), NW=(a-1,b)
    for (int b = 0; b <= ny; ++b) {
      for (int a = 0; a <= nx; ++a) {
        CornerStates c;
        if (o2) {
          c.SW = diagonal_minmod(em(a - 2, b - 2), em(a - 1, b - 1), em(a, b));
          c.SE = diagonal_minmod(em(a + 1, b - 2), em(a, b - 1), em(a - 1, b));
          c.NE = diagonal_minmod(em(a + 1, b + 1), em(a, b), em(a - 1, b - 1));
          c.NW = diagonal_minmod(em(a - 2, b + 1), em(a - 1, b), em(a, b - 1));
          vv_(a, b) = vertex_values_o2(c);
        } else {
          c = {em(a - 1, b - 1), em(a, b - 1), em(a, b), em(a - 1, b)};
          vv_(a, b) = vertex_values_o1(c);
        }
      }
    }
    for (int j = 0; j < ny; ++j) {
      for (int i = -1; i < nx; ++i) {
        EmState m, p;
        traces_x(i, j, m, p);
        put6(Fx_(i, j), edge_flux_x(vv_(i + 1, j + 1), vv_(i + 1, j), m, p));
      }
    }
    if (grid_.one_d()) return;
    for (int j = -1; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        EmState m, p;
        traces_y(i, j, m, p);
        put6(Fy_(i, j), edge_flux_y(vv_(i + 1, j + 1), vv_(i, j + 1), m, p));
      }
    }
    return;
  }

  const bool phm = p_.scheme == MaxwellScheme::PHM;
  auto edge = [&](ConservedVector& F, const EmState& m, const EmState& p, Dir d) {
    if (phm) {
      const Em8 f = phm_flux(m, p, d, p_.phm);
      for (int k = 0; k < 8; ++k) F[slot::Bx + k] = f[k];
    } else {
      put6(F, rusanov_maxwell_flux(m, p, d));
    }
  };
  for (int j = 0; j < ny; ++j) {
    for (int i = -1; i < nx; ++i) {
      EmState m, p;
      traces_x(i, j, m, p);
      edge(Fx_(i, j), m, p, Dir::X);
    }
  }
  if (grid_.one_d()) return;
  for (int j = -1; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      EmState m, p;
      traces_y(i, j, m, p);
      edge(Fy_(i, j), m, p, Dir::Y);
    }
  }
}

void Solver::assemble(Field& out) const {
  const double rdx = 1.0 / grid_.dx, rdy = 1.0 / grid_.dy;
  const bool two_d = !grid_.one_d();
  for (int j = 0; j < grid_.ny; ++j) {
    for (int i = 0; i < grid_.nx; ++i) {
      const ConservedVector& fr = Fx_(i, j);
      const ConservedVector& fl = Fx_(i - 1, j);
      ConservedVector& o = out(i, j);
      for (std::size_t k = 0; k < kNumVarsPhm; ++k) o[k] = -(fr[k] - fl[k]) * rdx;
      if (two_d) {
        const ConservedVector& ft = Fy_(i, j);
        const ConservedVector& fb = Fy_(i, j - 1);
        for (std::size_t k = 0; k < kNumVarsPhm; ++k) o[k] -= (ft[k] - fb[k]) * rdy;
      }
    }
  }
}

void Solver::spatial_operator(Field& out) {
  build_caches();
  fluid_fluxes();
  maxwell_fluxes();
  assemble(out);
}

void Solver::spatial_operator(Field& U, Field& out) {
  recover(U);
  spatial_operator(out);
}

void Solver::source(double t, Field& out) {
  const bool mms = p_.src.manufactured != sources::Manufactured::None;
  for (int j = 0; j < grid_.ny; ++j) {
    for (int i = 0; i < grid_.nx; ++i) {
      const PrimitiveVector& w = W_(i, j);
      ConservedVector s = sources::source_from_primitives(w.ion, w.electron, w.em, p_.src);
      if (mms) {
        const ConservedVector r = sources::manufactured_source(grid_.xc(i), grid_.yc(j), t, p_.src);
        for (std::size_t k = 0; k < kNumVarsPhm; ++k) s[k] += r[k];
      }
      out(i, j) = s;
    }
  }
}

void Solver::store_current(CurrentField& J) const {
  for (int j = 0; j < grid_.ny; ++j) {
    for (int i = 0; i < grid_.nx; ++i) {
      const PrimitiveVector& w = W_(i, j);
      const sources::ChargeCurrent cc = sources::charge_current(w.ion, w.electron, p_.src);
      J(i, j) = {p_.src.scale * cc.J[0], p_.src.scale * cc.J[1], p_.src.scale * cc.J[2]};
    }
  }
}

StepReport Solver::ssp_rk2_step(Field& U, double t, double dt) {
  StepReport rep;
  rep.t = t;
  rep.dt = dt;
  const int nx = grid_.nx, ny = grid_.ny;

  rep.flagged += recover(U);
  spatial_operator(L0_);
  source(t, S0_);
  store_current(Ja_);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      for (std::size_t k = 0; k < kNumVarsPhm; ++k) U1_(i, j)[k] = U(i, j)[k] + dt * (L0_(i, j)[k] + S0_(i, j)[k]);

  rep.flagged += recover(U1_);
  spatial_operator(L1_);
  source(t + dt, S1_);
  store_current(Jb_);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      ConservedVector& u = U(i, j);
      const ConservedVector& u1 = U1_(i, j);
      for (std::size_t k = 0; k < kNumVarsPhm; ++k) {
        u[k] = 0.5 * (u[k] + (u1[k] + dt * (L1_(i, j)[k] + S1_(i, j)[k])));
      }
    }
  }
  return rep;
}

StepReport Solver::imex_step(Field& U, double t, double dt) {
  StepReport rep;
  rep.t = t;
  rep.dt = dt;
  const int nx = grid_.nx, ny = grid_.ny;
  const double beta = 1.0 - 1.0 / std::sqrt(2.0);
  const bool mms = p_.src.manufactured != sources::Manufactured::None;
  const double t1 = t + beta * dt, t2 = t + (1.0 - beta) * dt;
  auto R = [&](int i, int j, double tt) {
    return mms ? sources::manufactured_source(grid_.xc(i), grid_.yc(j), tt, p_.src) : ConservedVector{};
  };
  auto solve = [&](Field& Ustage, const Field& Ustar, int stage) {
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        PrimitiveVector& w = W_(i, j);
        try {
          const sources::ImplicitResult r = sources::implicit_stage_solve(
              Ustar(i, j), beta * dt, p_.ion, p_.electron, p_.src, p_.implicit, w.ion.p, w.electron.p, &w);
          Ustage(i, j) = r.U;
          w.ion = r.wi;
          w.electron = r.we;
          w.em = r.U.em();
          rep.newton_max = std::max(rep.newton_max, r.iterations);
          rep.newton_total += r.iterations;
        } catch (const StiffSolveError& e) {
          throw StiffSolveError(e.what(), i, j, e.residual, stage);
        }
      }
    }
    set_primitive_ghosts();
  };

  rep.flagged += recover(U);

  // stage 1: U1 = U^n + beta dt (S(U1) + R(t1))
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const ConservedVector r1 = R(i, j, t1);
      for (std::size_t k = 0; k < kNumVarsPhm; ++k) U2_(i, j)[k] = U(i, j)[k] + beta * dt * r1[k];
    }
  }
  solve(U1_, U2_, 1);
  spatial_operator(L0_);
  source(t1, S0_);  // S(U1) + R(t1)
  store_current(Ja_);

  // stage 2: U2 = U^n + dt [L(U1) + (1 - 2 beta)(S(U1) + R1)] + beta dt (S(U2) + R(t2))
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const ConservedVector r2 = R(i, j, t2);
      for (std::size_t k = 0; k < kNumVarsPhm; ++k) {
        U2_(i, j)[k] = U(i, j)[k] + dt * (L0_(i, j)[k] + (1.0 - 2.0 * beta) * S0_(i, j)[k]) + beta * dt * r2[k];
      }
    }
  }
  solve(U1_, U2_, 2);  // U1_ now holds U2
  spatial_operator(L1_);
  source(t2, S1_);
  store_current(Jb_);

  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      ConservedVector& u = U(i, j);
      for (std::size_t k = 0; k < kNumVarsPhm; ++k) {
        u[k] += 0.5 * dt * (L0_(i, j)[k] + L1_(i, j)[k] + S0_(i, j)[k] + S1_(i, j)[k]);
      }
    }
  }
  return rep;
}

}  // namespace rtf
