#include "rtf/grid.hpp"

#include <cmath>

#include "rtf/errors.hpp"

namespace rtf {

BoundaryKind parse_boundary(const std::string& name) {
  if (name == "periodic") return BoundaryKind::Periodic;
  if (name == "neumann") return BoundaryKind::Neumann;
  if (name == "conducting_wall") return BoundaryKind::ConductingWall;
  throw ConfigError("unknown boundary kind '" + name + "' (expected periodic, neumann, conducting_wall)");
}

const char* to_string(BoundaryKind b) {
  switch (b) {
    case BoundaryKind::Periodic: return "periodic";
    case BoundaryKind::Neumann: return "neumann";
    case BoundaryKind::ConductingWall: return "conducting_wall";
  }
  return "?";
}

Grid2D Grid2D::make(int nx, int ny, double x0, double x1, double y0, double y1,
                    BoundaryKind bc_x, BoundaryKind bc_y, int ghost) {
  if (nx < 1 || ny < 1) throw ConfigError("grid: nx and ny must be positive");
  if (!(x1 > x0) || !(y1 > y0)) throw ConfigError("grid: empty domain");
  if (ghost < 2) throw ConfigError("grid: ghost width must be at least 2");
  if (bc_x == BoundaryKind::ConductingWall) throw ConfigError("grid: conducting walls are supported in y only");
  Grid2D g;
  g.nx = nx; g.ny = ny;
  g.x0 = x0; g.x1 = x1; g.y0 = y0; g.y1 = y1;
  g.dx = (x1 - x0) / nx;
  g.dy = (y1 - y0) / ny;
  g.ghost = ghost;
  g.bc_x = bc_x; g.bc_y = bc_y;
  return g;
}

void reflect_y(ConservedVector& u) {
  u[slot::Myi] = -u[slot::Myi];
  u[slot::Mye] = -u[slot::Mye];
  u[slot::By] = -u[slot::By];
  u[slot::Ex] = -u[slot::Ex];
  u[slot::Ez] = -u[slot::Ez];
}

void reflect_y(PrimitiveVector& w) {
  w.ion.uy = -w.ion.uy;
  w.electron.uy = -w.electron.uy;
  w.em.By = -w.em.By;
  w.em.Ex = -w.em.Ex;
  w.em.Ez = -w.em.Ez;
}

}  // namespace rtf
