#pragma once

#include <cmath>
#include <random>

#include "rtf/fluid.hpp"
#include "rtf/state.hpp"

namespace testutil {

// Random admissible primitive state: rho, p log-uniform, |u| <= umax in a random direction.
inline rtf::SpeciesPrimitive random_state(std::mt19937_64& rng, double umax = 0.9) {
  std::uniform_real_distribution<double> lg(std::log(0.05), std::log(20.0));
  std::uniform_real_distribution<double> un(0.0, 1.0);
  std::normal_distribution<double> nrm(0.0, 1.0);
  rtf::SpeciesPrimitive w;
  w.rho = std::exp(lg(rng));
  w.p = std::exp(lg(rng));
  double d[3] = {nrm(rng), nrm(rng), nrm(rng)};
  const double n = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
  const double mag = umax * std::cbrt(un(rng));
  w.ux = mag * d[0] / n;
  w.uy = mag * d[1] / n;
  w.uz = mag * d[2] / n;
  return w;
}

inline double random_gamma(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(1.05, 2.0);
  return u(rng);
}

inline rtf::SpeciesPrimitive perturb(const rtf::SpeciesPrimitive& w, int k, double h) {
  rtf::SpeciesPrimitive q = w;
  switch (k) {
    case 0: q.rho += h; break;
    case 1: q.ux += h; break;
    case 2: q.uy += h; break;
    case 3: q.uz += h; break;
    default: q.p += h; break;
  }
  return q;
}

}  // namespace testutil
