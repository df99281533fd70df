#include "skewtent/birkhoff.hpp"

#include "skewtent/error.hpp"

#include <cmath>
#include <fmt/format.h>

namespace skewtent {

std::uint64_t CounterRng::next() noexcept
{
  std::uint64_t z = seed_ + (++counter_) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double CounterRng::uniform_open() noexcept
{
  for (;;) {
    const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
    if (u > 0.0) {
      return u;
    }
  }
}

GammaEstimate estimate_gamma(const SkewTentMap& map, std::size_t n,
                             std::uint64_t seed, std::size_t burn_in)
{
  if (n == 0) {
    throw DomainError("Birkhoff average needs at least one iterate");
  }
  CounterRng rng(seed);
  const double x0 = rng.uniform_open();
  const double alpha = map.alpha();

  double x = x0;
  for (std::size_t i = 0; i < burn_in && x != 0.0; ++i) {
    x = map.step(x);
  }

  std::size_t restarts = 0;
  std::size_t left = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (x == 0.0) {
      x = rng.uniform_open();
      ++restarts;
    }
    if (x <= alpha) {
      ++left;
    }
    x = map.step(x);
  }
  return { static_cast<double>(left) / static_cast<double>(n), n, seed, x0,
           restarts };
}

double lyapunov_from_gamma(double alpha, double beta, double gamma)
{
  return gamma * std::log(beta / alpha) +
         (1.0 - gamma) * std::log(beta / (1.0 - alpha));
}

double slope_from_gamma(double alpha, double beta, double gamma)
{
  return (gamma - alpha) * beta / (alpha * (1.0 - alpha));
}

double gamma_from_slope(double alpha, double beta, double psi_prime)
{
  return alpha * (1.0 - alpha) * psi_prime / beta + alpha;
}

std::string_view to_string(TangentMethod method) noexcept
{
  switch (method) {
    case TangentMethod::birkhoff:
      return "birkhoff";
    case TangentMethod::theta_implicit:
      return "theta-implicit";
    case TangentMethod::markov_exact:
      return "markov-exact";
  }
  return "unknown";
}

TangentEstimate TangentEstimate::from_gamma(double alpha, double beta,
                                            double gamma, TangentMethod method)
{
  return { alpha,
           beta,
           gamma,
           lyapunov_from_gamma(alpha, beta, gamma),
           slope_from_gamma(alpha, beta, gamma),
           method };
}

TangentEstimate TangentEstimate::from_slope(double alpha, double beta,
                                            double psi_prime,
                                            TangentMethod method)
{
  const double gamma = gamma_from_slope(alpha, beta, psi_prime);
  return { alpha,
           beta,
           gamma,
           lyapunov_from_gamma(alpha, beta, gamma),
           psi_prime,
           method };
}

} // namespace skewtent
