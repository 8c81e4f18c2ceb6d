#include "rtf/state.hpp"

#include <string>

#include "rtf/errors.hpp"

namespace rtf {

std::vector<double> flatten(const ConservedVector& u, bool phm) {
  const std::size_t n = phm ? kNumVarsPhm : kNumVars;
  return std::vector<double>(u.q.begin(), u.q.begin() + static_cast<std::ptrdiff_t>(n));
}

ConservedVector unflatten(std::span<const double> flat) {
  if (flat.size() != kNumVars && flat.size() != kNumVarsPhm) {
    throw ConfigError("unflatten: expected 16 or 18 components, got " + std::to_string(flat.size()));
  }
  ConservedVector u;
  for (std::size_t k = 0; k < flat.size(); ++k) u.q[k] = flat[k];
  return u;
}

}  // namespace rtf
