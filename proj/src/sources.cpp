#include "rtf/sources.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "rtf/errors.hpp"

namespace rtf::sources {

ChargeCurrent charge_current(const SpeciesPrimitive& wi, const SpeciesPrimitive& we, const SourceParams& p) {
  const double ai = p.r_i * wi.rho * fluid::lorentz_factor(wi);
  const double ae = p.r_e * we.rho * fluid::lorentz_factor(we);
  ChargeCurrent cc;
  cc.rho_c = ai + ae;
  cc.J = {ai * wi.ux + ae * we.ux, ai * wi.uy + ae * we.uy, ai * wi.uz + ae * we.uz};
  return cc;
}

Vec5 lorentz_source(const SpeciesPrimitive& w, const EmState& em, double r) {
  const double rD = r * w.rho * fluid::lorentz_factor(w);
  Vec5 s;
  s << 0.0, rD * (em.Ex + w.uy * em.Bz - w.uz * em.By), rD * (em.Ey + w.uz * em.Bx - w.ux * em.Bz),
      rD * (em.Ez + w.ux * em.By - w.uy * em.Bx), rD * (w.ux * em.Ex + w.uy * em.Ey + w.uz * em.Ez);
  return s;
}

ResistiveTerms resistive_terms(const SpeciesPrimitive& wi, const SpeciesPrimitive& we, const SourceParams& p) {
  ResistiveTerms rt;
  if (p.eta == 0.0) return rt;
  const double ri = p.r_i, re = p.r_e;
  const double Gi = fluid::lorentz_factor(wi), Ge = fluid::lorentz_factor(we);
  const double wp2 = ri * ri * wi.rho + re * re * we.rho;
  if (!(wp2 > 0)) throw AdmissibilityError("resistive_terms: vanishing plasma frequency");
  const double ui[3] = {wi.ux, wi.uy, wi.uz}, ue[3] = {we.ux, we.uy, we.uz};
  double Phi[3], J[3];
  for (int k = 0; k < 3; ++k) {
    J[k] = ri * wi.rho * Gi * ui[k] + re * we.rho * Ge * ue[k];
    Phi[k] = J[k] / wp2;
  }
  const double rho_c = ri * wi.rho * Gi + re * we.rho * Ge;
  const double Lam = (ri * ri * wi.rho * Gi + re * re * we.rho * Ge) / wp2;
  const double rho0 = Lam * rho_c - (J[0] * Phi[0] + J[1] * Phi[1] + J[2] * Phi[2]);
  const double pre = -p.eta * wp2 / (ri - re);
  for (int k = 0; k < 3; ++k) rt.R[k] = pre * (J[k] - rho0 * Phi[k]);
  rt.R0 = pre * (rho_c - rho0 * Lam);
  return rt;
}

ConservedVector source_from_primitives(const SpeciesPrimitive& wi, const SpeciesPrimitive& we, const EmState& em,
                                       const SourceParams& p) {
  ConservedVector S;
  const Vec5 si = lorentz_source(wi, em, p.r_i);
  const Vec5 se = lorentz_source(we, em, p.r_e);
  for (int k = 0; k < 5; ++k) {
    S[slot::Di + k] = si[k];
    S[slot::De + k] = se[k];
  }
  if (p.eta != 0.0) {
    const ResistiveTerms rt = resistive_terms(wi, we, p);
    for (int k = 0; k < 3; ++k) {
      S[slot::Mxi + k] += rt.R[k];
      S[slot::Mxe + k] -= rt.R[k];
    }
    S[slot::Ei] += rt.R0;
    S[slot::Ee] -= rt.R0;
  }
  const ChargeCurrent cc = charge_current(wi, we, p);
  S[slot::Ex] = -p.scale * cc.J[0];
  S[slot::Ey] = -p.scale * cc.J[1];
  S[slot::Ez] = -p.scale * cc.J[2];
  if (p.phm) S[slot::Phi] = p.xi * p.scale * cc.rho_c;
  return S;
}

ConservedVector manufactured_source(double x, double y, double t, const SourceParams& p) {
  ConservedVector R;
  const double tp = 2.0 * std::numbers::pi;
  switch (p.manufactured) {
    case Manufactured::None:
      break;
    case Manufactured::Accuracy1D: {
      const double ph = tp * (x - 0.5 * t);
      R[slot::Ex] = -(2.0 + std::sin(ph)) / std::sqrt(3.0);
      R[slot::Ez] = -3.0 * std::numbers::pi * std::cos(ph);
      break;
    }
    case Manufactured::Smooth2D: {
      const double ph = tp * (x + y - 0.5 * t);
      R[slot::Ex] = -(2.0 + std::sin(ph)) / std::sqrt(14.0);
      R[slot::Ey] = R[slot::Ex];
      R[slot::Ez] = -7.0 * std::numbers::pi * std::cos(ph);
      break;
    }
  }
  return R;
}

ConservedVector full_source(const ConservedVector& U, double x, double y, double t, const GasParams& gi,
                            const GasParams& ge, const SourceParams& p) {
  const SpeciesPrimitive wi = fluid::primitive_from_conserved(U.ion(), gi);
  const SpeciesPrimitive we = fluid::primitive_from_conserved(U.electron(), ge);
  ConservedVector S = source_from_primitives(wi, we, U.em(), p);
  if (p.manufactured != Manufactured::None) {
    const ConservedVector R = manufactured_source(x, y, t, p);
    for (std::size_t k = 0; k < kNumVarsPhm; ++k) S[k] += R[k];
  }
  return S;
}

namespace {

constexpr int kActive = 11;
using VecA = Eigen::Matrix<double, kActive, 1>;
using MatA = Eigen::Matrix<double, kActive, kActive>;
constexpr std::size_t kSlots[kActive] = {slot::Mxi, slot::Myi, slot::Mzi, slot::Ei, slot::Mxe, slot::Mye,
                                         slot::Mze, slot::Ee,  slot::Ex,  slot::Ey,  slot::Ez};

struct Evaluator {
  const GasParams& gi;
  const GasParams& ge;
  const SourceParams& p;
  fluid::RecoveryOptions ropt;

  bool recover_species(const ConservedVector& U, int s, double guess, SpeciesPrimitive& w) const {
    const fluid::RecoveryResult r = fluid::recover(U.species(s), s == 0 ? gi : ge, ropt, guess);
    if (!r.ok || r.floored || !fluid::admissible(r.w)) return false;
    w = r.w;
    return true;
  }

  VecA source(const SpeciesPrimitive& wi, const SpeciesPrimitive& we, const ConservedVector& U) const {
    const ConservedVector S = source_from_primitives(wi, we, U.em(), p);
    VecA s;
    for (int k = 0; k < kActive; ++k) s[k] = S[kSlots[k]];
    return s;
  }
};

VecA active(const ConservedVector& U) {
  VecA x;
  for (int k = 0; k < kActive; ++k) x[k] = U[kSlots[k]];
  return x;
}

void set_active(ConservedVector& U, const VecA& x) {
  for (int k = 0; k < kActive; ++k) U[kSlots[k]] = x[k];
}

}  // namespace

ImplicitResult implicit_stage_solve(const ConservedVector& U_star, double coeff, const GasParams& gi,
                                    const GasParams& ge, const SourceParams& p, const ImplicitOptions& opt,
                                    double p_guess_i, double p_guess_e, const PrimitiveVector* fallback) {
  const Evaluator ev{gi, ge, p, {}};
  ImplicitResult res;
  ConservedVector U = U_star;
  SpeciesPrimitive w[2];
  const double pg[2] = {p_guess_i, p_guess_e};
  for (int s = 0; s < 2; ++s) {
    if (ev.recover_species(U, s, pg[s], w[s])) continue;
    const std::size_t b = slot::species_base(s);
    if (!fallback || !(U_star[b] > 0)) {
      throw StiffSolveError("implicit solve: unrecoverable stage predictor", -1, -1, INFINITY);
    }
    SpeciesPrimitive g = s == 0 ? fallback->ion : fallback->electron;
    g.rho = U_star[b] / fluid::lorentz_factor(g);
    const SpeciesConserved c = fluid::conserved_from_primitive(g, s == 0 ? gi : ge);
    U[b + 1] = c.mx;
    U[b + 2] = c.my;
    U[b + 3] = c.mz;
    U[b + 4] = c.En;
    w[s] = g;
  }
  SpeciesPrimitive wi = w[0], we = w[1];
  double scale_star = 0;
  for (std::size_t k = 0; k < kNumVarsPhm; ++k) scale_star = std::max(scale_star, std::abs(U_star[k]));
  const double tol = opt.tol * (1.0 + scale_star);

  const VecA xstar = active(U_star);
  VecA x = active(U);
  VecA S = ev.source(wi, we, U);
  VecA G = x - xstar - coeff * S;
  int it = 0;
  double gnorm = G.cwiseAbs().maxCoeff();
  while (gnorm > tol && coeff != 0.0) {
    if (it >= opt.max_iter) {
      throw StiffSolveError("implicit solve: Newton did not converge", -1, -1, gnorm);
    }
    ++it;
    // Forward-difference Jacobian of S; species columns only need that species recovered.
    MatA dS;
    for (int k = 0; k < kActive; ++k) {
      const double h = opt.fd_step * (1.0 + std::abs(x[k]));
      ConservedVector Up = U;
      Up[kSlots[k]] += h;
      SpeciesPrimitive wpi = wi, wpe = we;
      bool ok = true;
      if (k < 4) ok = ev.recover_species(Up, 0, wi.p, wpi);
      else if (k < 8) ok = ev.recover_species(Up, 1, we.p, wpe);
      if (!ok) {
        // step toward the interior of the admissible set instead
        Up[kSlots[k]] -= 2.0 * h;
        if (k < 4) ok = ev.recover_species(Up, 0, wi.p, wpi);
        else ok = ev.recover_species(Up, 1, we.p, wpe);
        if (!ok) throw StiffSolveError("implicit solve: Jacobian probe left the admissible set", -1, -1, gnorm);
        dS.col(k) = (S - ev.source(wpi, wpe, Up)) / h;
      } else {
        dS.col(k) = (ev.source(wpi, wpe, Up) - S) / h;
      }
    }
    const MatA Jg = MatA::Identity() - coeff * dS;
    const VecA delta = Jg.partialPivLu().solve(-G);
    const double f0 = 0.5 * G.squaredNorm();
    double t = 1.0;
    bool accepted = false;
    for (int h = 0; h <= opt.max_halvings; ++h, t *= 0.5) {
      const VecA xt = x + t * delta;
      ConservedVector Ut = U;
      set_active(Ut, xt);
      SpeciesPrimitive wti, wte;
      if (!ev.recover_species(Ut, 0, wi.p, wti) || !ev.recover_species(Ut, 1, we.p, wte)) continue;
      const VecA St = ev.source(wti, wte, Ut);
      const VecA Gt = xt - xstar - coeff * St;
      if (0.5 * Gt.squaredNorm() <= (1.0 - 2.0 * opt.armijo_c * t) * f0 || Gt.cwiseAbs().maxCoeff() <= tol) {
        x = xt;
        U = Ut;
        wi = wti;
        we = wte;
        S = St;
        G = Gt;
        accepted = true;
        break;
      }
    }
    if (!accepted) throw StiffSolveError("implicit solve: line search failed", -1, -1, gnorm);
    gnorm = G.cwiseAbs().maxCoeff();
  }
  if (p.phm) {
    const double rho_c = p.r_i * U_star[slot::Di] + p.r_e * U_star[slot::De];
    U[slot::Phi] = U_star[slot::Phi] + coeff * p.xi * p.scale * rho_c;
  }
  res.U = U;
  res.wi = wi;
  res.we = we;
  res.iterations = it;
  res.residual = gnorm;
  return res;
}

}  // namespace rtf::sources
