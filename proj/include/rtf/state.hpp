#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace rtf {

inline constexpr std::size_t kNumVars = 16;
inline constexpr std::size_t kNumVarsPhm = 18;

// Flat slot indices in canonical order (D_i, m_i, E_i, D_e, m_e, E_e, B, E, psi, phi).
namespace slot {
enum : std::size_t {
  Di = 0, Mxi, Myi, Mzi, Ei,
  De, Mxe, Mye, Mze, Ee,
  Bx, By, Bz, Ex, Ey, Ez,
  Psi, Phi
};
inline constexpr std::size_t species_base(int s) { return s == 0 ? Di : De; }
}  // namespace slot

enum class Species : int { Ion = 0, Electron = 1 };

struct SpeciesConserved {
  double D = 0, mx = 0, my = 0, mz = 0, En = 0;
  bool operator==(const SpeciesConserved&) const = default;
};

struct SpeciesPrimitive {
  double rho = 0, ux = 0, uy = 0, uz = 0, p = 0;
  double u(int d) const { return d == 0 ? ux : (d == 1 ? uy : uz); }
  bool operator==(const SpeciesPrimitive&) const = default;
};

struct EmState {
  double Bx = 0, By = 0, Bz = 0, Ex = 0, Ey = 0, Ez = 0, psi = 0, phi = 0;
  bool operator==(const EmState&) const = default;
};

// Cell state stored as a flat array so stage arithmetic is a plain loop;
// psi/phi occupy the last two slots and stay zero outside PHM runs.
struct ConservedVector {
  std::array<double, kNumVarsPhm> q{};

  double& operator[](std::size_t k) { return q[k]; }
  double operator[](std::size_t k) const { return q[k]; }

  SpeciesConserved species(int s) const {
    const std::size_t b = slot::species_base(s);
    return {q[b], q[b + 1], q[b + 2], q[b + 3], q[b + 4]};
  }
  void set_species(int s, const SpeciesConserved& c) {
    const std::size_t b = slot::species_base(s);
    q[b] = c.D; q[b + 1] = c.mx; q[b + 2] = c.my; q[b + 3] = c.mz; q[b + 4] = c.En;
  }
  SpeciesConserved ion() const { return species(0); }
  SpeciesConserved electron() const { return species(1); }
  EmState em() const {
    return {q[slot::Bx], q[slot::By], q[slot::Bz], q[slot::Ex],
            q[slot::Ey], q[slot::Ez], q[slot::Psi], q[slot::Phi]};
  }
  void set_em(const EmState& e) {
    q[slot::Bx] = e.Bx; q[slot::By] = e.By; q[slot::Bz] = e.Bz;
    q[slot::Ex] = e.Ex; q[slot::Ey] = e.Ey; q[slot::Ez] = e.Ez;
    q[slot::Psi] = e.psi; q[slot::Phi] = e.phi;
  }
  bool operator==(const ConservedVector&) const = default;
};

struct PrimitiveVector {
  SpeciesPrimitive ion, electron;
  EmState em;
  const SpeciesPrimitive& species(int s) const { return s == 0 ? ion : electron; }
  SpeciesPrimitive& species(int s) { return s == 0 ? ion : electron; }
  bool operator==(const PrimitiveVector&) const = default;
};

std::vector<double> flatten(const ConservedVector& u, bool phm);
// Accepts 16 or 18 entries; anything else throws ConfigError.
ConservedVector unflatten(std::span<const double> flat);

}  // namespace rtf
