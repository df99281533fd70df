#include "skewtent/map.hpp"

#include "skewtent/error.hpp"

#include <fmt/format.h>

namespace skewtent {

bool in_region_u(double alpha, double beta) noexcept
{
  return beta > 0.5 && beta <= 1.0 && alpha > 1.0 - beta && alpha < beta;
}

SkewTentMap::SkewTentMap(double alpha, double beta)
  : alpha_(alpha)
  , beta_(beta)
{
  if (!in_region_u(alpha, beta)) {
    throw RegionError(fmt::format(
      "parameters (alpha={}, beta={}) are outside the region U", alpha, beta));
  }
}

double SkewTentMap::operator()(double x) const
{
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError(fmt::format("x={} is outside [0, 1]", x));
  }
  return step(x);
}

Orbit orbit(const SkewTentMap& map, double x0, std::size_t n,
            std::size_t burn_in)
{
  if (!(x0 >= 0.0 && x0 <= 1.0)) {
    throw DomainError(fmt::format("orbit start x0={} is outside [0, 1]", x0));
  }
  if (n == 0) {
    throw DomainError("orbit length must be at least 1");
  }
  double x = x0;
  for (std::size_t i = 0; i < burn_in; ++i) {
    x = map.step(x);
  }
  Orbit result{ x0, burn_in, {} };
  result.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    x = map.step(x);
    result.points.push_back(x);
  }
  return result;
}

BranchSlopes branch_slopes(const SkewTentMap& map) noexcept
{
  return { map.beta() / map.alpha(), map.beta() / (1.0 - map.alpha()) };
}

Interval dynamical_core(const SkewTentMap& map) noexcept
{
  return { map.step(map.beta()), map.beta() };
}

} // namespace skewtent
