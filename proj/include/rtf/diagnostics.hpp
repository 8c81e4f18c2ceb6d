#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "rtf/fluid.hpp"
#include "rtf/grid.hpp"
#include "rtf/solver.hpp"

namespace rtf::diag {

// Fixed-tree pairwise sum, independent of any threading.
double pairwise_sum(std::span<const double> v);

struct Norms {
  double L1 = 0, L2 = 0;
};

struct DivergenceReport {
  long step = 0;
  double time = 0, dt = 0;
  double divB_L1 = 0, divB_L2 = 0;
  double divE_res_L1 = 0, divE_res_L2 = 0;
  // running sum of the per-step residuals since the start of the run
  double divE_acc_L1 = 0, divE_acc_L2 = 0;
  double total_entropy = 0;
};

// Vertex divergence of a cell-centred 2-vector field; cell(i, j) returns (A_x, A_y) for
// interior indices. Vertex (a, b) at (x0 + a dx, y0 + b dy) averages the four surrounding
// cells; periodic directions wrap, and vertices on a non-periodic boundary are left at zero.
VertexArray<double> vertex_divergence(const Grid2D& g,
                                      const std::function<std::array<double, 2>(int, int)>& cell);

VertexArray<double> divergence_B(const Grid2D& g, const Field& U);
VertexArray<double> divergence_E(const Grid2D& g, const Field& U);

// Normalised by Nx*Ny over vertices a = 1..Nx (1..Nx-1 when x is not periodic), same for b.
Norms div_norms(const VertexArray<double>& v, const Grid2D& g);

// div E^{n+1} - div E^n + dt/2 (div Ja + div Jb), with Ja, Jb the cached (scaled) stage currents.
VertexArray<double> electric_residual(const Grid2D& g, const Field& U_new, const Field& U_old,
                                      const CurrentField& Ja, const CurrentField& Jb, double dt);

// psi(t) = 1/(2 B0) * integral of |B_y| along y = 0, using the mean of the two rows straddling it.
double reconnected_flux(const Grid2D& g, const Field& U, double B0);

// (1/(Nx Ny)) sum |q(i,j) - exact(x_i, y_j)| over the interior.
double convergence_error(const Grid2D& g, const std::function<double(int, int)>& q,
                         const std::function<double(double, double)>& exact);
double observed_order(double e_coarse, double e_fine, double refinement = 2.0);

// dx dy sum over cells of (eta_i + eta_e).
double total_entropy(const Grid2D& g, const PrimField& W, const fluid::GasParams& gi, const fluid::GasParams& ge);

}  // namespace rtf::diag
