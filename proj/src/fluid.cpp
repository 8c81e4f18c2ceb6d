#include "rtf/fluid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rtf/errors.hpp"

namespace rtf::fluid {

GasParams GasParams::make(double gamma, double r) {
  if (!(gamma > 1.0 && gamma <= 2.0)) {
    std::ostringstream os;
    os << "adiabatic index " << gamma << " outside (1, 2]";
    throw ConfigError(os.str());
  }
  return {gamma, r};
}

double lorentz_factor(const SpeciesPrimitive& w) {
  const double u2 = w.ux * w.ux + w.uy * w.uy + w.uz * w.uz;
  return 1.0 / std::sqrt(1.0 - u2);
}

double specific_enthalpy(const SpeciesPrimitive& w, const GasParams& g) {
  return 1.0 + g.k() * w.p / w.rho;
}

double sound_speed_sq(const SpeciesPrimitive& w, const GasParams& g) {
  return g.k() * w.p / (g.n() * w.rho * specific_enthalpy(w, g));
}

bool admissible(const SpeciesPrimitive& w) {
  const double u2 = w.ux * w.ux + w.uy * w.uy + w.uz * w.uz;
  return w.rho > 0 && w.p > 0 && u2 < 1.0 && std::isfinite(w.rho) && std::isfinite(w.p) &&
         std::isfinite(u2);
}

SpeciesConserved conserved_from_primitive(const SpeciesPrimitive& w, const GasParams& g) {
  const double u2 = w.ux * w.ux + w.uy * w.uy + w.uz * w.uz;
  if (!(u2 < 1.0)) throw AdmissibilityError("conserved_from_primitive: |u| >= 1");
  const double G2 = 1.0 / (1.0 - u2);
  const double G = std::sqrt(G2);
  const double rhohG2 = (w.rho + g.k() * w.p) * G2;
  return {w.rho * G, rhohG2 * w.ux, rhohG2 * w.uy, rhohG2 * w.uz, rhohG2 - w.p};
}

RecoveryResult recover(const SpeciesConserved& u, const GasParams& g, const RecoveryOptions& opt,
                       double p_guess) {
  RecoveryResult res;
  double D = u.D;
  double mx = u.mx, my = u.my, mz = u.mz;
  double E = u.En;
  if (!(std::isfinite(D) && std::isfinite(E) && std::isfinite(mx) && std::isfinite(my) &&
        std::isfinite(mz))) {
    res.ok = false;
    res.floored = true;
    res.w = {opt.rho_floor, 0, 0, 0, opt.p_floor};
    return res;
  }
  if (D < opt.rho_floor) {
    D = opt.rho_floor;
    res.floored = true;
  }
  double m2 = mx * mx + my * my + mz * mz;
  // Recoverable states satisfy E^2 > D^2 + |m|^2; otherwise pull the momentum back inside.
  const double emin2 = D * D + m2;
  if (!(E * E > emin2 * (1.0 + 1e-14)) || E <= 0) {
    res.floored = true;
    if (E <= D) {
      res.ok = E > 0;
      res.w = {D, 0, 0, 0, opt.p_floor};
      return res;
    }
    const double s = std::sqrt(std::max(E * E - D * D, 0.0) / m2) * (1.0 - 1e-10);
    mx *= s; my *= s; mz *= s;
    m2 = mx * mx + my * my + mz * mz;
  }
  const double m = std::sqrt(m2);
  const double k = g.k();

  auto f_and_df = [&](double p, double& f, double& df) {
    const double Q = E + p;
    const double Q2 = Q * Q;
    const double root = std::sqrt(std::max(Q2 - m2, 0.0));
    f = ((Q - m2 / Q) - D * root / Q) / k - p;
    df = (1.0 + m2 / Q2 - (root > 0 ? D * m2 / (Q2 * root) : 0.0)) / k - 1.0;
  };

  double lo = 0.0;
  double hi = (g.gamma - 1.0) * E;
  double p = p_guess > 0 ? p_guess : std::max(m - E + D, 1e-10);
  if (!(p > lo && p < hi)) p = 0.5 * (lo + hi);
  bool converged = false;
  int it = 0;
  for (; it < opt.max_iter; ++it) {
    double f, df;
    f_and_df(p, f, df);
    if (f > 0) lo = p; else hi = p;
    if (f == 0.0) { converged = true; break; }
    double pn = p - f / df;
    if (!(pn > lo && pn < hi) || !std::isfinite(pn)) pn = 0.5 * (lo + hi);
    const double dp = std::abs(pn - p);
    p = pn;
    // below ~eps*(E+p) the residual is pure roundoff
    const double floor_dp = 64.0 * std::numeric_limits<double>::epsilon() * (E + p);
    if (dp <= std::max(opt.tol * p, floor_dp) || hi - lo <= std::max(opt.tol * p, floor_dp)) {
      converged = true;
      break;
    }
  }
  res.iterations = it + 1;
  if (!converged) res.ok = false;
  if (p < opt.p_floor) {
    p = opt.p_floor;
    res.floored = true;
  }
  const double Q = E + p;
  SpeciesPrimitive w;
  w.ux = mx / Q;
  w.uy = my / Q;
  w.uz = mz / Q;
  const double v2 = w.ux * w.ux + w.uy * w.uy + w.uz * w.uz;
  w.rho = D * std::sqrt(1.0 - v2);
  w.p = p;
  if (w.rho < opt.rho_floor) {
    w.rho = opt.rho_floor;
    res.floored = true;
  }
  res.w = w;
  return res;
}

SpeciesPrimitive primitive_from_conserved(const SpeciesConserved& u, const GasParams& g, double p_guess) {
  const RecoveryResult r = recover(u, g, RecoveryOptions{}, p_guess);
  if (!r.ok || r.floored || !admissible(r.w)) {
    std::ostringstream os;
    os << "primitive recovery failed: D=" << u.D << " m=(" << u.mx << "," << u.my << "," << u.mz
       << ") E=" << u.En;
    throw RecoveryError(os.str());
  }
  return r.w;
}

std::array<double, 5> fluid_eigenvalues(const SpeciesPrimitive& w, const GasParams& g, Axis dir) {
  const double c2 = sound_speed_sq(w, g);
  const double c = std::sqrt(c2);
  const double u2 = w.ux * w.ux + w.uy * w.uy + w.uz * w.uz;
  const double ud = dir == Axis::X ? w.ux : w.uy;
  const double Q = 1.0 - ud * ud - c2 * (u2 - ud * ud);
  if (Q < 0) throw AdmissibilityError("fluid_eigenvalues: negative discriminant");
  const double G = 1.0 / std::sqrt(1.0 - u2);
  const double den = 1.0 - c2 * u2;
  const double a = (1.0 - c2) * ud;
  const double b = (c / G) * std::sqrt(Q);
  return {(a - b) / den, ud, ud, ud, (a + b) / den};
}

double max_abs_eigenvalue(const SpeciesPrimitive& w, const GasParams& g, Axis dir) {
  const auto l = fluid_eigenvalues(w, g, dir);
  return std::max(std::abs(l[0]), std::max(std::abs(l[1]), std::abs(l[4])));
}

EntropyVariables entropy_variables(const SpeciesPrimitive& w, const GasParams& g) {
  EntropyVariables ev;
  const double gm = g.gamma;
  ev.s = std::log(w.p) - gm * std::log(w.rho);
  ev.beta = w.rho / w.p;
  const double G = lorentz_factor(w);
  ev.v << (gm - ev.s) / (gm - 1.0) + ev.beta, w.ux * G * ev.beta, w.uy * G * ev.beta,
      w.uz * G * ev.beta, -G * ev.beta;
  return ev;
}

SpeciesEntropy species_entropy(const SpeciesPrimitive& w, const GasParams& g) {
  const double s = std::log(w.p) - g.gamma * std::log(w.rho);
  const double eta = -w.rho * lorentz_factor(w) * s / (g.gamma - 1.0);
  return {eta, eta * w.ux, eta * w.uy};
}

Vec5 to_vec(const SpeciesConserved& u) {
  Vec5 v;
  v << u.D, u.mx, u.my, u.mz, u.En;
  return v;
}

SpeciesConserved from_vec(const Vec5& v) { return {v[0], v[1], v[2], v[3], v[4]}; }

Vec5 physical_flux(const SpeciesPrimitive& w, const GasParams& g, Axis dir) {
  const SpeciesConserved u = conserved_from_primitive(w, g);
  const int d = static_cast<int>(dir);
  const double ud = w.u(d);
  Vec5 f;
  f << u.D * ud, u.mx * ud, u.my * ud, u.mz * ud, d == 0 ? u.mx : u.my;
  f[1 + d] += w.p;
  return f;
}

PrimitiveJacobians primitive_jacobians(const SpeciesPrimitive& w, const GasParams& g, Axis dir) {
  PrimitiveJacobians J;
  const int d = static_cast<int>(dir);
  const double gm = g.gamma, k = g.k();
  const double u[3] = {w.ux, w.uy, w.uz};
  const double u2 = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
  const double G2 = 1.0 / (1.0 - u2);
  const double G = std::sqrt(G2);
  const double G3 = G2 * G, G4 = G2 * G2;
  const double rho = w.rho, p = w.p;
  const double H = rho + k * p;
  const double beta = rho / p;

  Mat5& dU = J.dU;
  dU.setZero();
  dU(0, 0) = G;
  for (int kk = 0; kk < 3; ++kk) dU(0, 1 + kk) = rho * G3 * u[kk];
  for (int j = 0; j < 3; ++j) {
    dU(1 + j, 0) = G2 * u[j];
    for (int kk = 0; kk < 3; ++kk) dU(1 + j, 1 + kk) = H * (2.0 * G4 * u[j] * u[kk] + (j == kk ? G2 : 0.0));
    dU(1 + j, 4) = k * G2 * u[j];
  }
  dU(4, 0) = G2;
  for (int kk = 0; kk < 3; ++kk) dU(4, 1 + kk) = 2.0 * H * G4 * u[kk];
  dU(4, 4) = k * G2 - 1.0;

  Mat5& dV = J.dV;
  dV.setZero();
  dV(0, 0) = gm / ((gm - 1.0) * rho) + 1.0 / p;
  dV(0, 4) = -1.0 / ((gm - 1.0) * p) - rho / (p * p);
  for (int j = 0; j < 3; ++j) {
    dV(1 + j, 0) = u[j] * G / p;
    for (int kk = 0; kk < 3; ++kk) dV(1 + j, 1 + kk) = beta * ((j == kk ? G : 0.0) + G3 * u[j] * u[kk]);
    dV(1 + j, 4) = -u[j] * G * rho / (p * p);
  }
  dV(4, 0) = -G / p;
  for (int kk = 0; kk < 3; ++kk) dV(4, 1 + kk) = -beta * G3 * u[kk];
  dV(4, 4) = G * rho / (p * p);

  // f = (D u_d, m_j u_d + p delta_jd, m_d)
  const double D = rho * G;
  const double ud = u[d];
  const double mj[3] = {H * G2 * u[0], H * G2 * u[1], H * G2 * u[2]};
  Mat5& dF = J.dF;
  dF.row(0) = ud * dU.row(0);
  dF(0, 1 + d) += D;
  for (int j = 0; j < 3; ++j) {
    dF.row(1 + j) = ud * dU.row(1 + j);
    dF(1 + j, 1 + d) += mj[j];
    if (j == d) dF(1 + j, 4) += 1.0;
  }
  dF.row(4) = dU.row(1 + d);
  return J;
}

Mat5 symmetrizer(const SpeciesPrimitive& w, const GasParams& g) {
  const PrimitiveJacobians J = primitive_jacobians(w, g, Axis::X);
  Mat5 S = J.dU * J.dV.inverse();
  return 0.5 * (S + S.transpose());
}

}  // namespace rtf::fluid
