#pragma once

#include <cstddef>
#include <vector>

namespace skewtent {

/// True iff (alpha, beta) lies in the nontrivial parameter region
/// 0.5 < beta <= 1, 1 - beta < alpha < beta.
bool in_region_u(double alpha, double beta) noexcept;

struct BranchSlopes
{
  double lambda_slope; // beta / alpha, left branch
  double mu_slope;     // beta / (1 - alpha), right branch
};

struct Interval
{
  double lo;
  double hi;

  bool contains(double x) const noexcept { return lo <= x && x <= hi; }
  double width() const noexcept { return hi - lo; }
};

/// Skew tent map with turning point (alpha, beta):
///   x <= alpha : beta * x / alpha
///   x >  alpha : beta * (1 - x) / (1 - alpha)
/// Construction validates region membership and throws RegionError otherwise.
class SkewTentMap
{
public:
  SkewTentMap(double alpha, double beta);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }

  /// Throws DomainError for x outside [0, 1].
  double operator()(double x) const;

  /// Same as operator() without the domain check; x must lie in [0, 1].
  double step(double x) const noexcept
  {
    return x <= alpha_ ? beta_ * (x / alpha_)
                       : beta_ * ((1.0 - x) / (1.0 - alpha_));
  }

  friend bool operator==(const SkewTentMap&, const SkewTentMap&) = default;

private:
  double alpha_;
  double beta_;
};

struct Orbit
{
  double start;
  std::size_t burn_in;
  std::vector<double> points;
};

/// Discards burn_in iterates of x0, then records the next n.
Orbit orbit(const SkewTentMap& map, double x0, std::size_t n,
            std::size_t burn_in = 0);

BranchSlopes branch_slopes(const SkewTentMap& map) noexcept;

/// The invariant interval [T(beta), beta] that absorbs every interior orbit.
Interval dynamical_core(const SkewTentMap& map) noexcept;

} // namespace skewtent
