#pragma once

#include <array>

#include "rtf/state.hpp"

namespace rtf::maxwell {

// Maxwell flux slots in the order (Bx, By, Bz, Ex, Ey, Ez).
using Em6 = std::array<double, 6>;
// PHM slots append (psi, phi).
using Em8 = std::array<double, 8>;

enum class Dir : int { X = 0, Y = 1 };
enum class Corner { SW, SE, NE, NW };

inline double minmod(double a, double b, double c) {
  const double l = b - a, r = c - b;
  if (l > 0 && r > 0) return l < r ? l : r;
  if (l < 0 && r < 0) return l > r ? l : r;
  return 0.0;
}

// Orientation: SW=(i,j), SE=(i+1,j), NE=(i+1,j+1), NW=(i,j+1) around vertex (i+1/2, j+1/2).
struct CornerStates {
  EmState SW, SE, NE, NW;
};

struct VertexEmValues {
  double Ez_tilde = 0;
  double Bz_tilde = 0;
};

Em6 physical_flux(const EmState& s, Dir d);
Em8 physical_flux_phm(const EmState& s, Dir d, double kappa, double xi);

// Diagonal hat state toward the vertex: center + 1/2 MinMod(away, center, toward),
// where `away` is the diagonal neighbour on the far side and `toward` the one across the vertex.
EmState diagonal_minmod(const EmState& away, const EmState& center, const EmState& toward);
// Convenience form naming the corner; the stencil is passed in the same (away, center, toward) order.
EmState diagonal_minmod(Corner c, const EmState& away, const EmState& center, const EmState& toward);

// Multidimensional LLF vertex values with unit wave speeds.
VertexEmValues vertex_values_o1(const CornerStates& c);
// Same formula applied to the diagonally reconstructed hat states.
VertexEmValues vertex_values_o2(const CornerStates& hat);

// 1-D MinMod traces at the face between cells b and c of the stencil (a, b, c, d).
EmState trace_left(const EmState& a, const EmState& b, const EmState& c);   // b + slope/2
EmState trace_right(const EmState& b, const EmState& c, const EmState& d);  // c - slope/2

// x-edge between cells (i,j) and (i+1,j); top/bottom are the vertices (i+1/2, j+-1/2).
Em6 edge_flux_x(const VertexEmValues& top, const VertexEmValues& bottom, const EmState& minus, const EmState& plus);
// y-edge between cells (i,j) and (i,j+1); right/left are the vertices (i+-1/2, j+1/2).
Em6 edge_flux_y(const VertexEmValues& right, const VertexEmValues& left, const EmState& minus, const EmState& plus);

// Baselines: plain Rusanov with unit speed on every component, and the PHM system.
struct PhmParams {
  double kappa = 1.0;
  double xi = 1.0;
  static PhmParams make(double kappa, double xi);  // validates kappa, xi >= 1
};

Em6 rusanov_maxwell_flux(const EmState& left, const EmState& right, Dir d);
Em8 phm_flux(const EmState& left, const EmState& right, Dir d, const PhmParams& p);

}  // namespace rtf::maxwell
