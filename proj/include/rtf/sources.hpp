#pragma once

#include <array>

#include "rtf/fluid.hpp"
#include "rtf/state.hpp"

namespace rtf::sources {

using fluid::GasParams;
using fluid::Vec5;

enum class Manufactured { None, Accuracy1D, Smooth2D };

struct SourceParams {
  double r_i = 1.0;
  double r_e = -1.0;
  double eta = 0.0;    // resistivity; 0 disables the friction terms
  double scale = 1.0;  // Maxwell source factor, 1 or 4*pi
  Manufactured manufactured = Manufactured::None;
  bool phm = false;    // adds the xi * rho_c source on phi
  double xi = 1.0;
};

struct ChargeCurrent {
  double rho_c = 0;
  std::array<double, 3> J{};
};

ChargeCurrent charge_current(const SpeciesPrimitive& wi, const SpeciesPrimitive& we, const SourceParams& p);

// (0, r D (E + u x B), r D u.E)
Vec5 lorentz_source(const SpeciesPrimitive& w, const EmState& em, double r);

struct ResistiveTerms {
  std::array<double, 3> R{};  // ion momentum exchange; the electron term is -R
  double R0 = 0;              // ion energy exchange; the electron term is -R0
};
ResistiveTerms resistive_terms(const SpeciesPrimitive& wi, const SpeciesPrimitive& we, const SourceParams& p);

// Physical source S from primitives (no manufactured forcing).
ConservedVector source_from_primitives(const SpeciesPrimitive& wi, const SpeciesPrimitive& we, const EmState& em,
                                       const SourceParams& p);

// Manufactured forcing R(x, y, t); zero when p.manufactured == None.
ConservedVector manufactured_source(double x, double y, double t, const SourceParams& p);

// S(U) + R(x, y, t) after strict primitive recovery.
ConservedVector full_source(const ConservedVector& U, double x, double y, double t, const GasParams& gi,
                            const GasParams& ge, const SourceParams& p);

struct ImplicitOptions {
  int max_iter = 50;
  double tol = 1e-10;
  double armijo_c = 1e-4;
  int max_halvings = 30;
  double fd_step = 1e-7;
};

struct ImplicitResult {
  ConservedVector U;
  SpeciesPrimitive wi, we;
  int iterations = 0;
  double residual = 0;
};

// Solves U = U_star + coeff * S(U) cell-locally. Density and B slots are left unchanged; psi is
// unchanged and phi receives its closed-form update. p_guess_* seed the primitive recoveries.
// If a species of U_star is not recoverable, Newton starts from that species' density with the velocity
// and pressure of `fallback` (when given). Throws StiffSolveError (cell index -1) on failure.
ImplicitResult implicit_stage_solve(const ConservedVector& U_star, double coeff, const GasParams& gi,
                                    const GasParams& ge, const SourceParams& p, const ImplicitOptions& opt = {},
                                    double p_guess_i = -1.0, double p_guess_e = -1.0,
                                    const PrimitiveVector* fallback = nullptr);

}  // namespace rtf::sources
