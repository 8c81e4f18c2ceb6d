#pragma once

#include <array>

#include <Eigen/Dense>

#include "rtf/state.hpp"

namespace rtf::fluid {

using Vec5 = Eigen::Matrix<double, 5, 1>;
using Mat5 = Eigen::Matrix<double, 5, 5>;

enum class Axis : int { X = 0, Y = 1 };

struct GasParams {
  double gamma = 5.0 / 3.0;
  double r = 1.0;  // charge-to-mass ratio

  double k() const { return gamma / (gamma - 1.0); }
  double n() const { return 1.0 / (gamma - 1.0); }
  // Throws ConfigError when gamma is outside (1, 2].
  static GasParams make(double gamma, double r);
};

struct RecoveryOptions {
  int max_iter = 200;
  double tol = 1e-12;
  double rho_floor = 1e-14;
  double p_floor = 1e-14;
};

struct RecoveryResult {
  SpeciesPrimitive w;
  int iterations = 0;
  bool floored = false;  // floors were applied; the cell should be flagged
  bool ok = true;        // false when even the floored state is meaningless
};

double lorentz_factor(const SpeciesPrimitive& w);
double specific_enthalpy(const SpeciesPrimitive& w, const GasParams& g);
double sound_speed_sq(const SpeciesPrimitive& w, const GasParams& g);
bool admissible(const SpeciesPrimitive& w);

SpeciesConserved conserved_from_primitive(const SpeciesPrimitive& w, const GasParams& g);

// Newton on pressure with bisection safeguard. p_guess <= 0 selects the default start.
RecoveryResult recover(const SpeciesConserved& u, const GasParams& g,
                       const RecoveryOptions& opt = {}, double p_guess = -1.0);
// Strict variant: throws RecoveryError if the result is floored or not converged.
SpeciesPrimitive primitive_from_conserved(const SpeciesConserved& u, const GasParams& g,
                                          double p_guess = -1.0);

std::array<double, 5> fluid_eigenvalues(const SpeciesPrimitive& w, const GasParams& g, Axis dir);
double max_abs_eigenvalue(const SpeciesPrimitive& w, const GasParams& g, Axis dir);

struct EntropyVariables {
  Vec5 v;
  double beta = 0;  // rho / p
  double s = 0;     // ln(p rho^-gamma)
};
EntropyVariables entropy_variables(const SpeciesPrimitive& w, const GasParams& g);

struct SpeciesEntropy {
  double eta = 0, qx = 0, qy = 0;
};
SpeciesEntropy species_entropy(const SpeciesPrimitive& w, const GasParams& g);

Vec5 to_vec(const SpeciesConserved& u);
SpeciesConserved from_vec(const Vec5& v);
Vec5 physical_flux(const SpeciesPrimitive& w, const GasParams& g, Axis dir);

// Analytic derivatives with respect to W = (rho, ux, uy, uz, p).
struct PrimitiveJacobians {
  Mat5 dU;  // dU/dW
  Mat5 dV;  // dV/dW
  Mat5 dF;  // dF^dir/dW
};
PrimitiveJacobians primitive_jacobians(const SpeciesPrimitive& w, const GasParams& g, Axis dir);

// Symmetrizer dU/dV = dU/dW (dV/dW)^-1.
Mat5 symmetrizer(const SpeciesPrimitive& w, const GasParams& g);

}  // namespace rtf::fluid
