#include "skewtent/theta.hpp"

#include "skewtent/error.hpp"
#include "skewtent/map.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace skewtent {

namespace {

// Neumaier's variant of Kahan summation.
class CompensatedSum
{
public:
  explicit CompensatedSum(double init = 0.0)
    : sum_(init)
  {}

  void add(double x)
  {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + carry_; }

private:
  double sum_;
  double carry_ = 0.0;
};

struct SeriesParams
{
  double alpha;
  double beta;
  double rho; // (1 - alpha) / beta
  double a;   // alpha / beta
};

SeriesParams make_params(double alpha, double beta)
{
  if (!in_region_u(alpha, beta)) {
    throw RegionError(fmt::format(
      "Theta is evaluated on U only, got (alpha={}, beta={})", alpha, beta));
  }
  return { alpha, beta, (1.0 - alpha) / beta, alpha / beta };
}

// Bounds on the remainder after N terms given mbar_k >= m0 for all k > N.
struct TailBounds
{
  double value;
  double d_alpha;
  double d_beta;
};

TailBounds tail_bounds(const SeriesParams& p, std::size_t n, double m0)
{
  const double rho = p.rho;
  const double rho_n1 = std::pow(rho, static_cast<double>(n + 1));
  const double s0 = rho_n1 / (1.0 - rho);
  const double s1 = rho_n1 *
                    ((static_cast<double>(n) + 1.0) - static_cast<double>(n) * rho) /
                    ((1.0 - rho) * (1.0 - rho));
  const double a_m0 = std::pow(p.a, m0);
  // sup_{m >= m0} m a^m
  const double log_inv_a = -std::log(p.a);
  const double m_star = 1.0 / log_inv_a;
  const double g = m0 >= m_star ? m0 * a_m0 : m_star * std::pow(p.a, m_star);
  return {
    a_m0 * s0,
    s0 * g / p.alpha + s1 * a_m0 / (1.0 - p.alpha),
    (s1 * a_m0 + s0 * g) / p.beta,
  };
}

struct SeriesResult
{
  double value;
  double d_alpha;
  double d_beta;
  TailBounds tail;
  std::size_t terms;
};

enum class Want
{
  value,
  gradient,
};

SeriesResult sum_series(const RLBlocks& blocks, double alpha, double beta,
                        const ThetaOptions& options, Want want)
{
  if (!(options.tol > 0.0)) {
    throw DomainError("Theta tolerance must be positive");
  }
  if (blocks.tail == RLBlocks::Tail::periodic && blocks.m.empty()) {
    throw MalformedError("periodic RL blocks need a nonempty period");
  }
  const SeriesParams p = make_params(alpha, beta);

  CompensatedSum value(1.0 - beta);
  CompensatedSum d_alpha(0.0);
  CompensatedSum d_beta(-1.0);

  auto reached = [&](const TailBounds& t) {
    return want == Want::value
             ? t.value <= options.tol
             : std::max(t.d_alpha, t.d_beta) <= options.tol;
  };

  const bool periodic = blocks.tail == RLBlocks::Tail::periodic;
  const std::size_t available = periodic ? options.max_terms
                                         : std::min(blocks.m.size(),
                                                    options.max_terms);
  double magnitude = 1.0;
  std::uint64_t mbar = 0;
  std::size_t k = 0;
  TailBounds tail{ 0.0, 0.0, 0.0 };
  while (k < available) {
    ++k;
    const std::uint64_t mk = blocks.block(k);
    mbar += mk;
    magnitude *= p.rho * std::pow(p.a, static_cast<double>(mk));
    const double term = (k % 2 == 1) ? -magnitude : magnitude;
    value.add(term);
    if (want == Want::gradient) {
      const double kd = static_cast<double>(k);
      const double md = static_cast<double>(mbar);
      d_alpha.add(term * (md / alpha - kd / (1.0 - alpha)));
      d_beta.add(term * (-(kd + md) / beta));
    }
    if (periodic) {
      tail = tail_bounds(p, k, static_cast<double>(mbar));
      if (reached(tail)) {
        break;
      }
    }
  }

  if (!periodic) {
    const bool exhausted = k == blocks.m.size();
    if (blocks.tail == RLBlocks::Tail::ends_in_L_infinity && exhausted) {
      tail = { 0.0, 0.0, 0.0 };
    } else {
      const double m0 = static_cast<double>(mbar) +
                        (exhausted ? static_cast<double>(blocks.partial_run)
                                   : 0.0);
      tail = tail_bounds(p, k, m0);
    }
    if (!reached(tail) && options.strict_truncation) {
      const double achievable =
        want == Want::value ? tail.value : std::max(tail.d_alpha, tail.d_beta);
      throw TruncationError(
        fmt::format("{} RL blocks certify only {:.3g}, above tol {:.3g}",
                    k, achievable, options.tol),
        achievable);
    }
  }

  return { value.value(), d_alpha.value(), d_beta.value(), tail, k };
}

} // namespace

ThetaEval theta_eval(const RLBlocks& blocks, double alpha, double beta,
                     const ThetaOptions& options)
{
  auto r = sum_series(blocks, alpha, beta, options, Want::value);
  return { r.value, r.tail.value, r.terms };
}

ThetaGradient theta_partials(const RLBlocks& blocks, double alpha, double beta,
                             const ThetaOptions& options)
{
  auto r = sum_series(blocks, alpha, beta, options, Want::gradient);
  return { r.d_alpha, r.d_beta, std::max(r.tail.d_alpha, r.tail.d_beta),
           r.terms };
}

double implicit_slope(const RLBlocks& blocks, double alpha, double beta,
                      const ThetaOptions& options)
{
  const ThetaGradient g = theta_partials(blocks, alpha, beta, options);
  if (!(std::abs(g.d_beta) > 10.0 * g.tail_bound)) {
    throw DegenerateGradientError(fmt::format(
      "d_beta={:.3g} is not separated from zero by the tail bound {:.3g}",
      g.d_beta, g.tail_bound));
  }
  return -g.d_alpha / g.d_beta;
}

} // namespace skewtent
