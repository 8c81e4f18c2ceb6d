#include "rtf/es_flux.hpp"

#include <algorithm>
#include <cmath>

#include "rtf/errors.hpp"

namespace rtf::es {

using fluid::PrimitiveJacobians;

double log_mean(double a, double b) {
  if (!(a > 0 && b > 0)) throw AdmissibilityError("log_mean: nonpositive argument");
  const double zeta = a / b;
  const double f = (zeta - 1.0) / (zeta + 1.0);
  const double u = f * f;
  double F;
  if (u < 1e-2) {
    // atanh series carried far enough to stay at roundoff for u < 1e-2
    F = 1.0 + u * (1.0 / 3.0 + u * (1.0 / 5.0 + u * (1.0 / 7.0 + u * (1.0 / 9.0 + u * (1.0 / 11.0 + u * (1.0 / 13.0 + u / 15.0))))));
  } else {
    F = std::log(zeta) / (2.0 * f);
  }
  return 0.5 * (a + b) / F;
}

Vec5 physical_fluid_flux(const SpeciesPrimitive& w, const GasParams& g, Axis dir) {
  return fluid::physical_flux(w, g, dir);
}

CellCache make_cache(const SpeciesPrimitive& w, const GasParams& g) {
  CellCache c;
  c.w = w;
  const auto ev = fluid::entropy_variables(w, g);
  c.v = ev.v;
  c.beta = ev.beta;
  c.G = fluid::lorentz_factor(w);
  c.lam_x = fluid::max_abs_eigenvalue(w, g, Axis::X);
  c.lam_y = fluid::max_abs_eigenvalue(w, g, Axis::Y);
  return c;
}

Vec5 ec_flux_cached(const CellCache& L, const CellCache& R, const GasParams& g, int d) {
  const double rho_ln = log_mean(L.w.rho, R.w.rho);
  const double beta_ln = log_mean(L.beta, R.beta);
  const double rho_a = 0.5 * (L.w.rho + R.w.rho);
  const double beta_a = 0.5 * (L.beta + R.beta);
  const double G_a = 0.5 * (L.G + R.G);
  const double m[3] = {0.5 * (L.G * L.w.ux + R.G * R.w.ux), 0.5 * (L.G * L.w.uy + R.G * R.w.uy),
                       0.5 * (L.G * L.w.uz + R.G * R.w.uz)};
  const double khat = 1.0 / ((g.gamma - 1.0) * beta_ln) + 1.0;
  double den = m[0] * m[0] + m[1] * m[1] + m[2] * m[2] - G_a * G_a;
  if (den > -1e-300) den = -1e-300;
  const double pa = rho_a / beta_a;
  const double md = m[d];
  Vec5 F;
  F[4] = -G_a * (khat * rho_ln * md + md * pa) / den;
  F[0] = rho_ln * md;
  for (int j = 0; j < 3; ++j) F[1 + j] = F[4] * m[j] / G_a;
  F[1 + d] += pa;
  return F;
}

Vec5 entropy_conservative_flux(const InterfacePair& pair, const GasParams& g) {
  return ec_flux_cached(make_cache(pair.left, g), make_cache(pair.right, g), g, static_cast<int>(pair.dir));
}

namespace {

// State of the entropy-conservative flux: log means of rho and beta, arithmetic mean of Gamma u.
SpeciesPrimitive average(const SpeciesPrimitive& a, const SpeciesPrimitive& b) {
  const double ga = fluid::lorentz_factor(a), gb = fluid::lorentz_factor(b);
  const double mx = 0.5 * (ga * a.ux + gb * b.ux), my = 0.5 * (ga * a.uy + gb * b.uy),
               mz = 0.5 * (ga * a.uz + gb * b.uz);
  const double G = std::sqrt(1.0 + mx * mx + my * my + mz * mz);
  const double rho = log_mean(a.rho, b.rho);
  const double beta = log_mean(a.rho / a.p, b.rho / b.p);
  return {rho, mx / G, my / G, mz / G, rho / beta};
}

// Eigenvector of symmetric M for a known simple eigenvalue by shifted inverse iteration.
Vec5 eigvec_inverse_iteration(const Mat5& M, double lam) {
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  const double mu = lam + 1e-10 * scale;
  const Mat5 A = M - mu * Mat5::Identity();
  const Eigen::PartialPivLU<Mat5> lu(A);
  Vec5 x;
  x << 1.0, 0.8, 0.6, 0.4, 0.2;
  for (int it = 0; it < 2; ++it) {
    x = lu.solve(x);
    x /= x.norm();
  }
  Eigen::Index imax;
  x.cwiseAbs().maxCoeff(&imax);
  if (x[imax] < 0) x = -x;
  return x;
}

}  // namespace

DissipationOperator build_dissipation(const InterfacePair& pair, const GasParams& g, bool with_eigenvectors) {
  DissipationOperator op;
  const SpeciesPrimitive wa = average(pair.left, pair.right);
  const int d = static_cast<int>(pair.dir);
  const PrimitiveJacobians J = fluid::primitive_jacobians(wa, g, pair.dir);
  const Mat5 Vinv = J.dV.inverse();
  // dU/dV = dU/dW (dV/dW)^-1
  Mat5 UV = J.dU * Vinv;
  UV = 0.5 * (UV + UV.transpose());
  op.dUdV = UV;
  const Eigen::LLT<Mat5> llt(UV);
  if (llt.info() != Eigen::Success) throw AdmissibilityError("build_dissipation: symmetrizer not positive definite");
  op.chol = llt.matrixL();
  op.lambda = std::max({fluid::max_abs_eigenvalue(pair.left, g, pair.dir),
                        fluid::max_abs_eigenvalue(pair.right, g, pair.dir),
                        fluid::max_abs_eigenvalue(wa, g, pair.dir)});
  op.Lam = op.lambda * Mat5::Identity();
  op.eig = fluid::fluid_eigenvalues(wa, g, pair.dir);
  if (!with_eigenvectors) {
    op.D = op.lambda * UV;
    op.Rt.setZero();
    op.basis.setZero();
    return op;
  }
  Mat5 FV = J.dF * Vinv;
  FV = 0.5 * (FV + FV.transpose());
  const auto Ltri = op.chol.triangularView<Eigen::Lower>();
  const Mat5 X = Ltri.solve(FV);                       // L^-1 FV
  Mat5 M = Ltri.solve(Mat5(X.transpose()));            // L^-1 FV L^-T
  M = 0.5 * (M + M.transpose());

  const Vec5 gm = eigvec_inverse_iteration(M, op.eig[0]);
  const Vec5 gp = eigvec_inverse_iteration(M, op.eig[4]);
  // Contact and shear directions, orthonormalised inside the complement of the acoustic pair.
  const int tang[2] = {d == 0 ? 2 : 1, 3};
  const int cols[3] = {0, 1 + tang[0], 1 + tang[1]};
  Vec5 basis[5];
  basis[0] = gm;
  basis[4] = gp;
  for (int c = 0; c < 3; ++c) {
    Vec5 t = Ltri.solve(Vec5(J.dU.col(cols[c])));
    for (int pass = 0; pass < 2; ++pass) {
      t -= t.dot(gm) * gm;
      t -= t.dot(gp) * gp;
      for (int q = 0; q < c; ++q) t -= t.dot(basis[1 + q]) * basis[1 + q];
    }
    t /= t.norm();
    basis[1 + c] = t;
  }
  for (int c = 0; c < 5; ++c) op.basis.col(c) = basis[c];
  op.Rt = op.chol * op.basis;
  op.D = op.Rt * op.Lam * op.Rt.transpose();
  return op;
}

Mat5 dissipation_matrix(const DissipationOperator& op, DissipationRoute route) {
  if (route == DissipationRoute::Closed) return op.lambda * op.dUdV;
  return op.Rt * op.Lam * op.Rt.transpose();
}

ScaledJump scaled_minmod_jump(const std::array<Vec5, 4>& V, const DissipationOperator& op) {
  const Mat5 RtT = op.Rt.transpose();
  Vec5 W[4];
  for (int m = 0; m < 4; ++m) W[m] = RtT * V[m];
  ScaledJump sj;
  for (int k = 0; k < 5; ++k) {
    sj.rawW[k] = W[2][k] - W[1][k];
    sj.dW[k] = limited_jump(W[0][k], W[1][k], W[2][k], W[3][k]);
  }
  // (Rt^T)^-1 = L^-T * basis
  sj.dV = op.chol.transpose().triangularView<Eigen::Upper>().solve(Vec5(op.basis * sj.dW));
  return sj;
}

Vec5 es_flux_cached_o1(const CellCache& L, const CellCache& R, const GasParams& g, int d) {
  const Vec5 F = ec_flux_cached(L, R, g, d);
  const DissipationOperator op =
      build_dissipation({L.w, R.w, static_cast<Axis>(d)}, g, /*with_eigenvectors=*/false);
  return F - 0.5 * op.D * (R.v - L.v);
}

Vec5 es_flux_cached_o2(const CellCache& a, const CellCache& L, const CellCache& R, const CellCache& b,
                       const GasParams& g, int d) {
  const Vec5 F = ec_flux_cached(L, R, g, d);
  const DissipationOperator op = build_dissipation({L.w, R.w, static_cast<Axis>(d)}, g, true);
  const Mat5 RtT = op.Rt.transpose();
  const Vec5 W0 = RtT * a.v, W1 = RtT * L.v, W2 = RtT * R.v, W3 = RtT * b.v;
  Vec5 dW;
  for (int k = 0; k < 5; ++k) dW[k] = limited_jump(W0[k], W1[k], W2[k], W3[k]);
  // D [[V~]] = lambda Rt [[W~]]
  return F - 0.5 * op.lambda * (op.Rt * dW);
}

Vec5 es_fluid_flux_o1(const InterfacePair& pair, const GasParams& g) {
  return es_flux_cached_o1(make_cache(pair.left, g), make_cache(pair.right, g), g, static_cast<int>(pair.dir));
}

Vec5 es_fluid_flux_o2(const std::array<SpeciesPrimitive, 4>& s, const GasParams& g, Axis dir) {
  return es_flux_cached_o2(make_cache(s[0], g), make_cache(s[1], g), make_cache(s[2], g), make_cache(s[3], g), g,
                           static_cast<int>(dir));
}

}  // namespace rtf::es
