#pragma once

#include "rtf/config.hpp"
#include "rtf/grid.hpp"
#include "rtf/solver.hpp"

namespace rtf::cases {

// Cell-centred primitive initial data for the configured case at cell (i, j).
PrimitiveVector initial_primitive(const RunConfig& cfg, const Grid2D& g, int i, int j);

// Conserved initial field (interior only).
Field initial_field(const RunConfig& cfg, const Grid2D& g);

// Vector potential used for the GEM magnetic field at vertex (x, y).
double gem_vector_potential(const RunConfig& cfg, double x, double y);

// Exact ion density of the manufactured cases.
double exact_rho_i(CaseId c, double x, double y, double t);
// Exact B_y of the resistive current sheet.
double current_sheet_By(double x, double t, double B0, double D);

}  // namespace rtf::cases
