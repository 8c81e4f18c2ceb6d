#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rtf/state.hpp"

namespace rtf {

enum class BoundaryKind { Periodic, Neumann, ConductingWall };

BoundaryKind parse_boundary(const std::string& name);
const char* to_string(BoundaryKind b);

struct Grid2D {
  int nx = 1, ny = 1;
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  double dx = 1, dy = 1;
  int ghost = 2;
  BoundaryKind bc_x = BoundaryKind::Periodic;
  BoundaryKind bc_y = BoundaryKind::Periodic;

  // Validates and fills dx, dy.
  static Grid2D make(int nx, int ny, double x0, double x1, double y0, double y1,
                     BoundaryKind bc_x, BoundaryKind bc_y, int ghost = 2);

  bool one_d() const { return ny == 1; }
  double xc(int i) const { return x0 + (i + 0.5) * dx; }
  double yc(int j) const { return y0 + (j + 0.5) * dy; }
  // Vertex a sits at the left edge of cell a (a = 0..nx).
  double xv(int a) const { return x0 + a * dx; }
  double yv(int b) const { return y0 + b * dy; }
  std::size_t cells() const { return std::size_t(nx) * std::size_t(ny); }
};

// Cell-centred array with ghost padding; indices run over [-ghost, n+ghost).
template <class T>
class FieldArray {
 public:
  FieldArray() = default;
  explicit FieldArray(const Grid2D& g, const T& init = T{})
      : nx_(g.nx), ny_(g.ny), ng_(g.ghost), sx_(g.nx + 2 * g.ghost),
        data_(std::size_t(g.nx + 2 * g.ghost) * std::size_t(g.ny + 2 * g.ghost), init) {}

  T& operator()(int i, int j) { return data_[index(i, j)]; }
  const T& operator()(int i, int j) const { return data_[index(i, j)]; }

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int ghost() const { return ng_; }
  std::size_t size() const { return data_.size(); }
  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }
  std::vector<T>& raw() { return data_; }
  const std::vector<T>& raw() const { return data_; }

  std::size_t index(int i, int j) const {
    return std::size_t(j + ng_) * std::size_t(sx_) + std::size_t(i + ng_);
  }

 private:
  int nx_ = 0, ny_ = 0, ng_ = 0, sx_ = 0;
  std::vector<T> data_;
};

// Vertex array of (nx+1)x(ny+1) entries; (a, b) is the vertex at (x0 + a dx, y0 + b dy),
// i.e. vertex (i+1/2, j+1/2) of cell (i, j) has a = i+1, b = j+1.
template <class T>
class VertexArray {
 public:
  VertexArray() = default;
  explicit VertexArray(const Grid2D& g, const T& init = T{})
      : nx_(g.nx), ny_(g.ny), data_(std::size_t(g.nx + 1) * std::size_t(g.ny + 1), init) {}
  T& operator()(int a, int b) { return data_[std::size_t(b) * std::size_t(nx_ + 1) + std::size_t(a)]; }
  const T& operator()(int a, int b) const {
    return data_[std::size_t(b) * std::size_t(nx_ + 1) + std::size_t(a)];
  }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  std::size_t size() const { return data_.size(); }
  std::vector<T>& raw() { return data_; }
  const std::vector<T>& raw() const { return data_; }

 private:
  int nx_ = 0, ny_ = 0;
  std::vector<T> data_;
};

// Component parity under reflection across a y = const wall.
void reflect_y(ConservedVector& u);
void reflect_y(PrimitiveVector& w);
inline void reflect_y(double&) {}

template <class T>
void fill_ghosts(FieldArray<T>& f, const Grid2D& g) {
  const int nx = g.nx, ny = g.ny, ng = g.ghost;
  // x direction on interior rows
  for (int j = 0; j < ny; ++j) {
    for (int k = 1; k <= ng; ++k) {
      switch (g.bc_x) {
        case BoundaryKind::Periodic:
          f(-k, j) = f(nx - k, j);
          f(nx - 1 + k, j) = f(k - 1, j);
          break;
        case BoundaryKind::Neumann:
          f(-k, j) = f(0, j);
          f(nx - 1 + k, j) = f(nx - 1, j);
          break;
        case BoundaryKind::ConductingWall:
          // walls are only supported at y boundaries; in x they behave as mirrors without flips
          f(-k, j) = f(k - 1, j);
          f(nx - 1 + k, j) = f(nx - k, j);
          break;
      }
    }
  }
  // y direction over full padded rows so corners are filled
  for (int i = -ng; i < nx + ng; ++i) {
    for (int k = 1; k <= ng; ++k) {
      switch (g.bc_y) {
        case BoundaryKind::Periodic:
          f(i, -k) = f(i, ny - k);
          f(i, ny - 1 + k) = f(i, k - 1);
          break;
        case BoundaryKind::Neumann:
          f(i, -k) = f(i, 0);
          f(i, ny - 1 + k) = f(i, ny - 1);
          break;
        case BoundaryKind::ConductingWall: {
          T lo = f(i, k - 1);
          T hi = f(i, ny - k);
          reflect_y(lo);
          reflect_y(hi);
          f(i, -k) = lo;
          f(i, ny - 1 + k) = hi;
          break;
        }
      }
    }
  }
}

}  // namespace rtf
