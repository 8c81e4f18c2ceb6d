#include "rtf/cases.hpp"

#include <cmath>
#include <numbers>

#include "rtf/errors.hpp"

namespace rtf::cases {

namespace {

constexpr double pi = std::numbers::pi;

double sech2(double x) {
  const double c = std::cosh(x);
  return 1.0 / (c * c);
}

void gem_cell(const RunConfig& c, const Grid2D& g, int i, int j, PrimitiveVector& w) {
  const double d = 1.0;
  const double y = g.yc(j);
  const double n = sech2(y / d) + 0.2;
  const double uz = c.gem_uz_sign * c.B0 * sech2(y / d) / (2.0 * d * n);
  const double p = 0.2 + 0.25 * c.B0 * c.B0 * sech2(y / d) * c.gem_pressure_factor;
  w.ion = {n, 0, 0, uz, p};
  w.electron = {n / 25.0, 0, 0, -uz, p};
  // discrete curl of the vertex potential keeps the vertex divergence at round-off
  const double xa = g.xv(i), xb = g.xv(i + 1), ya = g.yv(j), yb = g.yv(j + 1);
  const double A00 = gem_vector_potential(c, xa, ya), A10 = gem_vector_potential(c, xb, ya);
  const double A01 = gem_vector_potential(c, xa, yb), A11 = gem_vector_potential(c, xb, yb);
  w.em.Bx = (A01 + A11 - A00 - A10) / (2.0 * g.dy);
  w.em.By = -(A10 + A11 - A00 - A01) / (2.0 * g.dx);
}

}  // namespace

double gem_vector_potential(const RunConfig& c, double x, double y) {
  const double d = 1.0, Lx = 8 * pi, Ly = 4 * pi;
  // ln cosh without overflow
  const double a = std::abs(y / d);
  const double lncosh = a + std::log1p(std::exp(-2 * a)) - std::log(2.0);
  return c.B0 * d * lncosh + c.B0 * c.psi0 * std::cos(c.gem_mode * pi * x / Lx) * std::cos(pi * y / Ly);
}

double exact_rho_i(CaseId c, double x, double y, double t) {
  switch (c) {
    case CaseId::Accuracy1D: return 2.0 + std::sin(2 * pi * (x - 0.5 * t));
    case CaseId::Smooth2D: return 2.0 + std::sin(2 * pi * (x + y - 0.5 * t));
    default: throw ConfigError("no exact solution for this case");
  }
}

double current_sheet_By(double x, double t, double B0, double D) { return B0 * std::erf(x / (2.0 * std::sqrt(D * t))); }

PrimitiveVector initial_primitive(const RunConfig& c, const Grid2D& g, int i, int j) {
  PrimitiveVector w;
  const double x = g.xc(i), y = g.yc(j);
  switch (c.test_case) {
    case CaseId::Accuracy1D: {
      const double s = std::sin(2 * pi * x);
      w.ion = w.electron = {2.0 + s, 0.5, 0, 0, 1.0};
      w.em.By = 2 * s;
      w.em.Ez = -s;
      break;
    }
    case CaseId::BrioWu: {
      const double sp = std::sqrt(pi), s4 = std::sqrt(4 * pi);
      if (x < 0) {
        w.ion = w.electron = {0.5, 0, 0, 0, 0.5};
        w.em.By = s4;
      } else {
        w.ion = w.electron = {0.0625, 0, 0, 0, 0.05};
        w.em.By = -s4;
      }
      w.em.Bx = sp;
      break;
    }
    case CaseId::CurrentSheet: {
      const double D = c.eta, rho = 0.5;
      const double uz = c.B0 / (c.r_i * rho * std::sqrt(pi * D)) * std::exp(-x * x / (4 * D));
      w.ion = {rho, 0, 0, uz, 25.0};
      w.electron = {rho, 0, 0, -uz, 25.0};
      w.em.By = current_sheet_By(x, c.t_start, c.B0, D);
      break;
    }
    case CaseId::Smooth2D: {
      const double s = std::sin(2 * pi * (x + y));
      w.ion = w.electron = {2.0 + s, 0.25, 0.25, 0, 1.0};
      w.em.Bx = -2 * s;
      w.em.By = 2 * s;
      w.em.Ez = -s;
      break;
    }
    case CaseId::OrszagTang: {
      const double ux = -0.5 * std::sin(2 * pi * y), uy = 0.5 * std::sin(2 * pi * x);
      w.ion = w.electron = {25.0 / (72 * pi), ux, uy, 0, 5.0 / (24 * pi)};
      w.em.Bx = -std::sin(2 * pi * y);
      w.em.By = std::sin(4 * pi * x);
      // E = -u_i x B with u_z = B_z = 0
      w.em.Ez = -(ux * w.em.By - uy * w.em.Bx);
      break;
    }
    case CaseId::Blast: {
      const double r = std::hypot(x, y);
      const double rin = 1e-2, pin = 1.0, rout = 1e-4, pout = 5e-4;
      double rho, p;
      if (r < 0.8) {
        rho = rin;
        p = pin;
      } else if (r > 1.0) {
        rho = rout;
        p = pout;
      } else {
        const double s = (r - 0.8) / 0.2;
        rho = rin + s * (rout - rin);
        p = pin + s * (pout - pin);
      }
      w.ion = w.electron = {0.5 * rho, 0, 0, 0, 0.5 * p};
      w.em.Bx = c.B0;
      break;
    }
    case CaseId::GEM:
      gem_cell(c, g, i, j, w);
      break;
  }
  return w;
}

Field initial_field(const RunConfig& c, const Grid2D& g) {
  Field U(g);
  const fluid::GasParams gi = fluid::GasParams::make(c.gamma_i, c.r_i);
  const fluid::GasParams ge = fluid::GasParams::make(c.gamma_e, c.r_e);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const PrimitiveVector w = initial_primitive(c, g, i, j);
      ConservedVector& u = U(i, j);
      u.set_species(0, fluid::conserved_from_primitive(w.ion, gi));
      u.set_species(1, fluid::conserved_from_primitive(w.electron, ge));
      u.set_em(w.em);
    }
  }
  return U;
}

}  // namespace rtf::cases
