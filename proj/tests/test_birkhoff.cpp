#include "oracles.hpp"

#include "skewtent/birkhoff.hpp"

#include <doctest.h>
#include <random>

using namespace skewtent;
using doctest::Approx;

TEST_CASE("counter RNG is reproducible and open")
{
  CounterRng a(42);
  CounterRng b(42);
  for (int i = 0; i < 1000; ++i) {
    const double x = a.uniform_open();
    CHECK(x == b.uniform_open());
    CHECK(x > 0.0);
    CHECK(x < 1.0);
  }
  CounterRng c(43);
  CHECK(CounterRng(42).next() != c.next());
}

TEST_CASE("gamma estimates at tabulated parameters")
{
  CHECK(std::abs(estimate_gamma(SkewTentMap(0.3, 0.8)).gamma - 0.20444) <=
        5e-3);
  CHECK(std::abs(estimate_gamma(SkewTentMap(0.6, 0.9)).gamma - 0.47736) <=
        5e-3);
  const auto full = estimate_gamma(SkewTentMap(0.5, 1.0));
  CHECK(std::abs(full.gamma - 0.5) <= 5e-3);
  // binary64 orbits of the full tent collapse onto 0.
  CHECK(full.restarts > 0);
}

TEST_CASE("gamma estimates are seed-deterministic with a modest spread")
{
  const SkewTentMap m(0.5, 0.7);
  const auto a = estimate_gamma(m, 200000, 9, 1000);
  const auto b = estimate_gamma(m, 200000, 9, 1000);
  CHECK(a.gamma == b.gamma);
  CHECK(a.x0 == b.x0);
  CHECK(a.seed == 9);
  CHECK(a.n_iterates == 200000);

  double lo = 1.0;
  double hi = 0.0;
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const double g = estimate_gamma(m, 200000, seed).gamma;
    lo = std::min(lo, g);
    hi = std::max(hi, g);
    CHECK(g >= 0.0);
    CHECK(g <= 1.0);
  }
  CHECK(hi - lo < 1e-2);
}

TEST_CASE("Lyapunov exponent from gamma")
{
  CHECK(lyapunov_from_gamma(0.5, 1.0, 0.5) == Approx(std::log(2.0)));
  const double beta = oracle::kGoldenBeta;
  for (double g : { 0.0, 0.3, 1.0 }) {
    CHECK(lyapunov_from_gamma(0.5, beta, g) ==
          Approx(std::log(oracle::kGoldenRatio)).epsilon(1e-12));
  }
  CHECK(std::abs(lyapunov_from_gamma(0.3, 0.8, 0.20444) - 0.30675) <= 2e-5);

  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const auto [a, b] = oracle::random_in_u(gen);
    CHECK(lyapunov_from_gamma(a, b, u(gen)) > 0.0);
  }
}

TEST_CASE("slope and gamma conversions")
{
  CHECK(std::abs(slope_from_gamma(0.3, 0.8, 0.20444) - -0.36406) <= 5e-5);
  CHECK(slope_from_gamma(0.5, 1.0, 0.5) == 0.0);
  CHECK(std::abs(slope_from_gamma(0.6, 0.75, 0.35597) - -0.76258) <= 5e-5);
  CHECK(std::abs(gamma_from_slope(0.3, 0.8, -0.36406) - 0.20444) <= 5e-5);
  CHECK(gamma_from_slope(0.42, 0.9, 0.0) == 0.42);

  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const auto [a, b] = oracle::random_in_u(gen);
    const double g = u(gen);
    CHECK(std::abs(gamma_from_slope(a, b, slope_from_gamma(a, b, g)) - g) <=
          1e-14);
    const auto t = TangentEstimate::from_gamma(a, b, g, TangentMethod::birkhoff);
    CHECK(std::abs(gamma_from_slope(a, b, t.psi_prime) - t.gamma) <= 1e-12);
    CHECK(std::abs(lyapunov_from_gamma(a, b, t.gamma) - t.lambda_exponent) <=
          1e-12);
    const auto s = TangentEstimate::from_slope(a, b, t.psi_prime,
                                               TangentMethod::theta_implicit);
    CHECK(std::abs(s.gamma - g) <= 1e-12);
  }
  CHECK(to_string(TangentMethod::markov_exact) == "markov-exact");
}
