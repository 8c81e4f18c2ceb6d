#pragma once

#include <array>

#include "rtf/fluid.hpp"

namespace rtf::es {

using fluid::Axis;
using fluid::GasParams;
using fluid::Mat5;
using fluid::Vec5;

double log_mean(double a, double b);

// Three-argument limiter: slope of b from its neighbours a (behind) and c (ahead).
inline double minmod(double a, double b, double c) {
  const double l = b - a, r = c - b;
  if (l > 0 && r > 0) return l < r ? l : r;
  if (l < 0 && r < 0) return l > r ? l : r;
  return 0.0;
}

// Jump (w2 - slope2/2) - (w1 + slope1/2) of the limited traces at the face between w1 and w2.
// Written so the result never has the opposite sign of w2 - w1, also in floating point.
inline double limited_jump(double w0, double w1, double w2, double w3) {
  const double c = w2 - w1;
  return c - 0.5 * (minmod(w0, w1, w2) + minmod(w1, w2, w3));
}

struct InterfacePair {
  SpeciesPrimitive left, right;
  Axis dir = Axis::X;
};

Vec5 physical_fluid_flux(const SpeciesPrimitive& w, const GasParams& g, Axis dir);
Vec5 entropy_conservative_flux(const InterfacePair& pair, const GasParams& g);

struct DissipationOperator {
  Mat5 Rt;       // entropy-scaled right eigenvectors, Rt Rt^T = dU/dV
  Mat5 Lam;      // lambda * I
  Mat5 D;        // Rt Lam Rt^T
  Mat5 chol;     // lower Cholesky factor of dU/dV
  Mat5 basis;    // orthonormal eigenbasis in symmetrised coordinates, Rt = chol * basis
  Mat5 dUdV;
  std::array<double, 5> eig{};  // eigenvalues of the average state, column order of Rt
  double lambda = 0;
};

enum class DissipationRoute { Eigen, Closed };

// Eigenvectors at the flux-average state (log-mean rho and rho/p, mean four-velocity). lambda is the largest
// |eigenvalue| over left, right and average states.
DissipationOperator build_dissipation(const InterfacePair& pair, const GasParams& g,
                                      bool with_eigenvectors = true);
// D for the given route; Closed = lambda * dU/dV.
Mat5 dissipation_matrix(const DissipationOperator& op, DissipationRoute route);

// Reconstructed entropy-variable jump at the interface between stencil[1] and stencil[2]
// (stencil = V at cells i-1, i, i+1, i+2). Also returns the scaled jump in W coordinates.
struct ScaledJump {
  Vec5 dV;   // [[V~]]
  Vec5 dW;   // [[W~]]
  Vec5 rawW; // W_{i+1} - W_i
};
ScaledJump scaled_minmod_jump(const std::array<Vec5, 4>& stencil, const DissipationOperator& op);

Vec5 es_fluid_flux_o1(const InterfacePair& pair, const GasParams& g);
// Stencil of primitives at cells i-1..i+2; the interface lies between entries 1 and 2.
Vec5 es_fluid_flux_o2(const std::array<SpeciesPrimitive, 4>& stencil, const GasParams& g, Axis dir);

// Per-cell quantities cached during grid sweeps.
struct CellCache {
  SpeciesPrimitive w;
  Vec5 v;
  double G = 1;     // Lorentz factor
  double beta = 1;  // rho / p
  double lam_x = 0, lam_y = 0;
};
CellCache make_cache(const SpeciesPrimitive& w, const GasParams& g);

// Sweep kernels operating on cached cells.
Vec5 ec_flux_cached(const CellCache& L, const CellCache& R, const GasParams& g, int dir);
Vec5 es_flux_cached_o1(const CellCache& L, const CellCache& R, const GasParams& g, int dir);
Vec5 es_flux_cached_o2(const CellCache& a, const CellCache& L, const CellCache& R, const CellCache& b,
                       const GasParams& g, int dir);

}  // namespace rtf::es
