#include "rtf/maxwell.hpp"

#include <algorithm>

#include "rtf/errors.hpp"

namespace rtf::maxwell {

namespace {

Em6 as6(const EmState& s) { return {s.Bx, s.By, s.Bz, s.Ex, s.Ey, s.Ez}; }

}  // namespace

Em6 physical_flux(const EmState& s, Dir d) {
  if (d == Dir::X) return {0.0, -s.Ez, s.Ey, 0.0, s.Bz, -s.By};
  return {s.Ez, 0.0, -s.Ex, -s.Bz, 0.0, s.Bx};
}

Em8 physical_flux_phm(const EmState& s, Dir d, double kappa, double xi) {
  if (d == Dir::X) return {kappa * s.psi, -s.Ez, s.Ey, xi * s.phi, s.Bz, -s.By, kappa * s.Bx, xi * s.Ex};
  return {s.Ez, kappa * s.psi, -s.Ex, -s.Bz, xi * s.phi, s.Bx, kappa * s.By, xi * s.Ey};
}

EmState diagonal_minmod(const EmState& a, const EmState& c, const EmState& t) {
  EmState h = c;
  h.Bx = c.Bx + 0.5 * minmod(a.Bx, c.Bx, t.Bx);
  h.By = c.By + 0.5 * minmod(a.By, c.By, t.By);
  h.Bz = c.Bz + 0.5 * minmod(a.Bz, c.Bz, t.Bz);
  h.Ex = c.Ex + 0.5 * minmod(a.Ex, c.Ex, t.Ex);
  h.Ey = c.Ey + 0.5 * minmod(a.Ey, c.Ey, t.Ey);
  h.Ez = c.Ez + 0.5 * minmod(a.Ez, c.Ez, t.Ez);
  h.psi = c.psi + 0.5 * minmod(a.psi, c.psi, t.psi);
  h.phi = c.phi + 0.5 * minmod(a.phi, c.phi, t.phi);
  return h;
}

EmState diagonal_minmod(Corner, const EmState& away, const EmState& center, const EmState& toward) {
  return diagonal_minmod(away, center, toward);
}

VertexEmValues vertex_values_o1(const CornerStates& c) {
  const double Ez_bar = 0.25 * (c.SW.Ez + c.SE.Ez + c.NE.Ez + c.NW.Ez);
  const double Bz_bar = 0.25 * (c.SW.Bz + c.SE.Bz + c.NE.Bz + c.NW.Bz);
  const double By_E = 0.5 * (c.SE.By + c.NE.By), By_W = 0.5 * (c.SW.By + c.NW.By);
  const double Bx_N = 0.5 * (c.NW.Bx + c.NE.Bx), Bx_S = 0.5 * (c.SW.Bx + c.SE.Bx);
  const double Ex_N = 0.5 * (c.NW.Ex + c.NE.Ex), Ex_S = 0.5 * (c.SW.Ex + c.SE.Ex);
  const double Ey_E = 0.5 * (c.SE.Ey + c.NE.Ey), Ey_W = 0.5 * (c.SW.Ey + c.NW.Ey);
  VertexEmValues v;
  v.Ez_tilde = Ez_bar + 0.5 * (By_E - By_W) - 0.5 * (Bx_N - Bx_S);
  v.Bz_tilde = Bz_bar + 0.5 * (Ex_N - Ex_S) - 0.5 * (Ey_E - Ey_W);
  return v;
}

VertexEmValues vertex_values_o2(const CornerStates& hat) { return vertex_values_o1(hat); }

EmState trace_left(const EmState& a, const EmState& b, const EmState& c) { return diagonal_minmod(a, b, c); }

EmState trace_right(const EmState& b, const EmState& c, const EmState& d) { return diagonal_minmod(d, c, b); }

Em6 edge_flux_x(const VertexEmValues& top, const VertexEmValues& bottom, const EmState& m, const EmState& p) {
  Em6 f{};
  f[1] = -0.5 * (top.Ez_tilde + bottom.Ez_tilde);
  f[4] = 0.5 * (top.Bz_tilde + bottom.Bz_tilde);
  f[2] = 0.5 * (m.Ey + p.Ey) - 0.5 * (p.Bz - m.Bz);
  f[5] = -0.5 * (m.By + p.By) - 0.5 * (p.Ez - m.Ez);
  return f;
}

Em6 edge_flux_y(const VertexEmValues& right, const VertexEmValues& left, const EmState& m, const EmState& p) {
  Em6 f{};
  f[0] = 0.5 * (right.Ez_tilde + left.Ez_tilde);
  f[3] = -0.5 * (right.Bz_tilde + left.Bz_tilde);
  f[2] = -0.5 * (m.Ex + p.Ex) - 0.5 * (p.Bz - m.Bz);
  f[5] = 0.5 * (m.Bx + p.Bx) - 0.5 * (p.Ez - m.Ez);
  return f;
}

PhmParams PhmParams::make(double kappa, double xi) {
  if (!(kappa >= 1.0) || !(xi >= 1.0)) throw ConfigError("PHM speeds kappa and xi must be >= 1");
  return {kappa, xi};
}

Em6 rusanov_maxwell_flux(const EmState& l, const EmState& r, Dir d) {
  const Em6 fl = physical_flux(l, d), fr = physical_flux(r, d);
  const Em6 ul = as6(l), ur = as6(r);
  Em6 f;
  for (int k = 0; k < 6; ++k) f[k] = 0.5 * (fl[k] + fr[k]) - 0.5 * (ur[k] - ul[k]);
  return f;
}

Em8 phm_flux(const EmState& l, const EmState& r, Dir d, const PhmParams& p) {
  const Em8 fl = physical_flux_phm(l, d, p.kappa, p.xi), fr = physical_flux_phm(r, d, p.kappa, p.xi);
  const Em8 ul{l.Bx, l.By, l.Bz, l.Ex, l.Ey, l.Ez, l.psi, l.phi};
  const Em8 ur{r.Bx, r.By, r.Bz, r.Ex, r.Ey, r.Ez, r.psi, r.phi};
  const double s = std::max({1.0, p.kappa, p.xi});
  Em8 f;
  for (int k = 0; k < 8; ++k) f[k] = 0.5 * (fl[k] + fr[k]) - 0.5 * s * (ur[k] - ul[k]);
  return f;
}

}  // namespace rtf::maxwell
