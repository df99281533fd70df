#pragma once

#include "skewtent/map.hpp"

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace skewtent {

/// Counter-based SplitMix64 stream: draw i is mix(seed + i * golden gamma),
/// so a (seed, index) pair always yields the same value.
class CounterRng
{
public:
  explicit CounterRng(std::uint64_t seed) noexcept
    : seed_(seed)
  {}

  std::uint64_t next() noexcept;

  /// Uniform double in the open interval (0, 1).
  double uniform_open() noexcept;

  std::uint64_t counter() const noexcept { return counter_; }

private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

inline constexpr std::size_t kDefaultBirkhoffIterates = 200000;
inline constexpr std::size_t kDefaultBurnIn = 1000;

struct GammaEstimate
{
  double gamma;
  std::size_t n_iterates;
  std::uint64_t seed;
  double x0;
  /// Times the orbit collapsed onto the fixed point 0 and was redrawn.
  std::size_t restarts;
};

/// Fraction of orbit time spent in [0, alpha] after burn_in iterates of a
/// seeded uniform start. In binary64 some maps (the full tent, for one)
/// shift mantissa bits out until the orbit lands exactly on the repelling
/// fixed point 0; such an orbit is replaced by a fresh draw from the same
/// stream and counting resumes without a second burn-in.
GammaEstimate estimate_gamma(const SkewTentMap& map,
                             std::size_t n = kDefaultBirkhoffIterates,
                             std::uint64_t seed = 1,
                             std::size_t burn_in = kDefaultBurnIn);

/// Lyapunov exponent gamma log(beta/alpha) + (1 - gamma) log(beta/(1-alpha)).
double lyapunov_from_gamma(double alpha, double beta, double gamma);

/// Isentrope slope (gamma - alpha) beta / (alpha (1 - alpha)).
double slope_from_gamma(double alpha, double beta, double gamma);

/// Inverse of slope_from_gamma: alpha (1 - alpha) slope / beta + alpha.
double gamma_from_slope(double alpha, double beta, double psi_prime);

enum class TangentMethod
{
  birkhoff,
  theta_implicit,
  markov_exact,
};

std::string_view to_string(TangentMethod method) noexcept;

/// gamma, the Lyapunov exponent and the isentrope slope at one parameter,
/// kept mutually consistent.
struct TangentEstimate
{
  double alpha;
  double beta;
  double gamma;
  double lambda_exponent;
  double psi_prime;
  TangentMethod method;

  static TangentEstimate from_gamma(double alpha, double beta, double gamma,
                                    TangentMethod method);
  static TangentEstimate from_slope(double alpha, double beta,
                                    double psi_prime, TangentMethod method);
};

} // namespace skewtent
