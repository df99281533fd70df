#pragma once

#include "skewtent/kneading.hpp"

#include <cstddef>

namespace skewtent {

// Theta_M(alpha, beta) = 1 - beta + sum_{k>=1} (-1)^k rho^k a^{mbar_k},
// rho = (1 - alpha)/beta, a = alpha/beta, mbar_k = m_1 + ... + m_k.
// It vanishes on the isentrope of M, so implicit differentiation of its zero
// set gives the isentrope slope.

struct ThetaOptions
{
  double tol = 1e-12;
  std::size_t max_terms = 10000;
  /// When false, truncated blocks that cannot reach tol return the
  /// achievable bound instead of throwing TruncationError.
  bool strict_truncation = true;
};

struct ThetaEval
{
  double value;
  double tail_bound;
  std::size_t terms_used;
};

struct ThetaGradient
{
  double d_alpha;
  double d_beta;
  double tail_bound; // bounds both partials
  std::size_t terms_used;
};

ThetaEval theta_eval(const RLBlocks& blocks, double alpha, double beta,
                     const ThetaOptions& options = {});

ThetaGradient theta_partials(const RLBlocks& blocks, double alpha, double beta,
                             const ThetaOptions& options = {});

/// Slope of the isentrope through (alpha, beta): -d_alpha / d_beta.
/// Throws DegenerateGradientError when |d_beta| <= 10 * tail_bound.
double implicit_slope(const RLBlocks& blocks, double alpha, double beta,
                      const ThetaOptions& options = {});

} // namespace skewtent
