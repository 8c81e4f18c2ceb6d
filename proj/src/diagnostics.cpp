#include "rtf/diagnostics.hpp"

#include <cmath>

namespace rtf::diag {

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t h = v.size() / 2;
  return pairwise_sum(v.subspan(0, h)) + pairwise_sum(v.subspan(h));
}

VertexArray<double> vertex_divergence(const Grid2D& g,
                                      const std::function<std::array<double, 2>(int, int)>& cell) {
  VertexArray<double> out(g, 0.0);
  const bool px = g.bc_x == BoundaryKind::Periodic, py = g.bc_y == BoundaryKind::Periodic;
  const double rdx = 1.0 / g.dx, rdy = 1.0 / g.dy;
  for (int b = 0; b <= g.ny; ++b) {
    if (!py && (b == 0 || b == g.ny)) continue;
    for (int a = 0; a <= g.nx; ++a) {
      if (!px && (a == 0 || a == g.nx)) continue;
      const int iw = (a - 1 + g.nx) % g.nx, ie = a % g.nx;
      const int js = (b - 1 + g.ny) % g.ny, jn = b % g.ny;
      const auto sw = cell(iw, js), se = cell(ie, js), ne = cell(ie, jn), nw = cell(iw, jn);
      out(a, b) = 0.5 * ((se[0] - sw[0]) + (ne[0] - nw[0])) * rdx + 0.5 * ((nw[1] - sw[1]) + (ne[1] - se[1])) * rdy;
    }
  }
  return out;
}

VertexArray<double> divergence_B(const Grid2D& g, const Field& U) {
  return vertex_divergence(g, [&](int i, int j) -> std::array<double, 2> {
    return {U(i, j)[slot::Bx], U(i, j)[slot::By]};
  });
}

VertexArray<double> divergence_E(const Grid2D& g, const Field& U) {
  return vertex_divergence(g, [&](int i, int j) -> std::array<double, 2> {
    return {U(i, j)[slot::Ex], U(i, j)[slot::Ey]};
  });
}

Norms div_norms(const VertexArray<double>& v, const Grid2D& g) {
  const int amax = g.bc_x == BoundaryKind::Periodic ? g.nx : g.nx - 1;
  const int bmax = g.bc_y == BoundaryKind::Periodic ? g.ny : g.ny - 1;
  std::vector<double> a1, a2;
  a1.reserve(std::size_t(g.nx) * g.ny);
  a2.reserve(std::size_t(g.nx) * g.ny);
  for (int b = 1; b <= bmax; ++b) {
    for (int a = 1; a <= amax; ++a) {
      const double x = std::abs(v(a, b));
      a1.push_back(x);
      a2.push_back(x * x);
    }
  }
  const double n = double(g.nx) * double(g.ny);
  return {pairwise_sum(a1) / n, std::sqrt(pairwise_sum(a2) / n)};
}

VertexArray<double> electric_residual(const Grid2D& g, const Field& U_new, const Field& U_old,
                                      const CurrentField& Ja, const CurrentField& Jb, double dt) {
  const VertexArray<double> dn = divergence_E(g, U_new), d0 = divergence_E(g, U_old);
  const VertexArray<double> dj = vertex_divergence(g, [&](int i, int j) -> std::array<double, 2> {
    return {Ja(i, j)[0] + Jb(i, j)[0], Ja(i, j)[1] + Jb(i, j)[1]};
  });
  VertexArray<double> r(g, 0.0);
  for (std::size_t k = 0; k < r.size(); ++k) r.raw()[k] = dn.raw()[k] - (d0.raw()[k] - 0.5 * dt * dj.raw()[k]);
  return r;
}

double reconnected_flux(const Grid2D& g, const Field& U, double B0) {
  // rows j0 and j0 + 1 straddle y = 0 on a grid symmetric about it
  const int j0 = int(std::floor((0.0 - g.y0) / g.dy - 0.5));
  const int j1 = j0 + 1;
  std::vector<double> v;
  v.reserve(g.nx);
  for (int i = 0; i < g.nx; ++i) {
    const double a = j0 >= 0 && j0 < g.ny ? std::abs(U(i, j0)[slot::By]) : 0.0;
    const double b = j1 >= 0 && j1 < g.ny ? std::abs(U(i, j1)[slot::By]) : 0.0;
    v.push_back(0.5 * (a + b));
  }
  return pairwise_sum(v) * g.dx / (2.0 * B0);
}

double convergence_error(const Grid2D& g, const std::function<double(int, int)>& q,
                         const std::function<double(double, double)>& exact) {
  std::vector<double> e;
  e.reserve(g.cells());
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) e.push_back(std::abs(q(i, j) - exact(g.xc(i), g.yc(j))));
  return pairwise_sum(e) / double(g.cells());
}

double observed_order(double e_coarse, double e_fine, double refinement) {
  return std::log(e_coarse / e_fine) / std::log(refinement);
}

double total_entropy(const Grid2D& g, const PrimField& W, const fluid::GasParams& gi, const fluid::GasParams& ge) {
  std::vector<double> e;
  e.reserve(g.cells());
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      e.push_back(fluid::species_entropy(W(i, j).ion, gi).eta + fluid::species_entropy(W(i, j).electron, ge).eta);
    }
  }
  return pairwise_sum(e) * g.dx * g.dy;
}

}  // namespace rtf::diag
