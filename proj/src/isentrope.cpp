#include "skewtent/isentrope.hpp"

#include "skewtent/error.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <json.hpp>

namespace skewtent {

namespace {

using Ordering = std::strong_ordering;

class Comparator
{
public:
  Comparator(double alpha, const KneadingSequence& target,
             std::size_t prefix_len, double c_tol)
    : alpha_(alpha)
    , target_(target)
    , prefix_len_(prefix_len)
    , c_tol_(c_tol)
  {}

  Ordering operator()(double beta) const
  {
    const SkewTentMap map(alpha_, beta);
    return parity_lex_compare(kneading_prefix(map, prefix_len_, c_tol_),
                              target_);
  }

private:
  double alpha_;
  const KneadingSequence& target_;
  std::size_t prefix_len_;
  double c_tol_;
};

// Bisects between a point with ordering `lo_side` and one that differs from
// it; returns the final bracket.
Interval bisect_edge(const Comparator& cmp, double lo, double hi,
                     Ordering lo_side, double tol)
{
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) {
      break;
    }
    if (cmp(mid) == lo_side) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return { lo, hi };
}

double lowest_beta(double alpha)
{
  double b = beta_floor(alpha) + 1e-12;
  while (!in_region_u(alpha, b) && b < 1.0) {
    b = std::nextafter(b, 2.0);
  }
  return b;
}

} // namespace

double beta_floor(double alpha) noexcept
{
  return std::max({ 0.5, 1.0 - alpha, alpha });
}

std::string_view to_string(BoundaryKind kind) noexcept
{
  switch (kind) {
    case BoundaryKind::top_edge:
      return "top-edge";
    case BoundaryKind::anti_diagonal:
      return "anti-diagonal";
    case BoundaryKind::diagonal:
      return "diagonal";
    case BoundaryKind::bottom_edge:
      return "bottom-edge";
  }
  return "unknown";
}

IsentropeSolver::IsentropeSolver(SkewTentMap reference,
                                 IsentropeOptions options)
  : reference_(reference)
  , options_(options)
{
  if (options_.prefix_len == 0 || !(options_.beta_tol > 0.0)) {
    throw DomainError("isentrope solver needs prefix_len >= 1, beta_tol > 0");
  }
}

IsentropePoint IsentropeSolver::solve(double alpha) const
{
  return solve(alpha, Interval{ 0.0, 0.0 });
}

IsentropePoint IsentropeSolver::solve(double alpha, Interval hint) const
{
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError(fmt::format("alpha={} is outside (0, 1)", alpha));
  }
  std::optional<Interval> h;
  if (hint.width() > 0.0) {
    h = hint;
  }
  std::size_t len = options_.prefix_len;
  for (;;) {
    try {
      return solve_at_length(alpha, len, h);
    } catch (const AmbiguousError&) {
      if (len * 2 > options_.max_prefix_len) {
        throw;
      }
      len *= 2;
    }
  }
}

std::optional<IsentropePoint> IsentropeSolver::try_solve(double alpha) const
{
  try {
    return solve(alpha);
  } catch (const NotBracketedError&) {
  } catch (const AmbiguousError&) {
  } catch (const DegenerateGradientError&) {
  } catch (const DomainError&) {
  }
  return std::nullopt;
}

IsentropePoint
IsentropeSolver::solve_at_length(double alpha, std::size_t prefix_len,
                                 std::optional<Interval> hint) const
{
  const KneadingSequence target =
    kneading_prefix(reference_, prefix_len, options_.c_tol);
  const Comparator cmp(alpha, target, prefix_len, options_.c_tol);
  const double tol = options_.beta_tol;

  double lo = 0.0;
  double hi = 0.0;
  double beta = 0.0;
  double width = 0.0;
  bool solved = false;

  const Ordering at_top = cmp(1.0);
  if (at_top == Ordering::equal) {
    beta = 1.0;
    solved = true;
  } else if (at_top == Ordering::less) {
    throw NotBracketedError(fmt::format(
      "kneading at alpha={} stays below the reference up to beta=1", alpha));
  }

  if (!solved) {
    const double bottom = lowest_beta(alpha);
    bool bracketed = false;
    if (hint) {
      const double hl = std::max(hint->lo, bottom);
      const double hh = std::min(hint->hi, 1.0);
      if (hl < hh && cmp(hl) == Ordering::less &&
          cmp(hh) == Ordering::greater) {
        lo = hl;
        hi = hh;
        bracketed = true;
      }
    }
    if (!bracketed) {
      if (cmp(bottom) != Ordering::less) {
        throw NotBracketedError(fmt::format(
          "reference kneading is below the range attained at alpha={}",
          alpha));
      }
      lo = bottom;
      hi = 1.0;
    }

    while (hi - lo > tol) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) {
        break;
      }
      const Ordering c = cmp(mid);
      if (c == Ordering::less) {
        lo = mid;
      } else if (c == Ordering::greater) {
        hi = mid;
      } else {
        // Plateau of parameters sharing the compared prefix.
        const Interval left = bisect_edge(cmp, lo, mid, Ordering::less, tol);
        const Interval right =
          bisect_edge(cmp, mid, hi, Ordering::equal, tol);
        lo = left.lo;
        hi = right.hi;
        if (!target.c_terminated() && hi - lo > 4.0 * tol) {
          throw AmbiguousError(fmt::format(
            "{} symbols leave a beta plateau of width {:.3g} at alpha={}",
            prefix_len, hi - lo, alpha));
        }
        break;
      }
    }
    if (lo <= bottom) {
      // Every trial above the floor compared greater: the curve has already
      // left U through the diagonal or anti-diagonal at this alpha.
      throw NotBracketedError(fmt::format(
        "isentrope meets the boundary of U at alpha={}", alpha));
    }
    beta = 0.5 * (lo + hi);
    width = hi - lo;
  }

  const RLBlocks blocks = rl_blocks(target);
  const ThetaEval residual =
    theta_eval(blocks, alpha, beta, options_.theta);
  const double slope = implicit_slope(blocks, alpha, beta, options_.theta);
  return { alpha,  beta,  residual.value, residual.tail_bound,
           slope,  width, prefix_len };
}

IsentropeTrace IsentropeSolver::trace(double alpha_lo, double alpha_hi,
                                      std::size_t steps) const
{
  if (!(alpha_lo < alpha_hi) || steps < 2) {
    throw DomainError("trace needs alpha_lo < alpha_hi and at least 2 steps");
  }
  IsentropeTrace out{ reference_, {}, alpha_lo, alpha_hi, {} };
  const double h = (alpha_hi - alpha_lo) / static_cast<double>(steps - 1);
  std::optional<IsentropePoint> prev;
  for (std::size_t i = 0; i < steps; ++i) {
    const double alpha =
      i + 1 == steps ? alpha_hi : alpha_lo + h * static_cast<double>(i);
    try {
      Interval hint{ 0.0, 0.0 };
      if (prev) {
        // Lipschitz bounds on the isentrope give the warm-start bracket.
        const double d = std::abs(alpha - prev->alpha);
        const double lip = std::max(prev->beta / prev->alpha,
                                    prev->beta / (1.0 - prev->alpha));
        const double w = 2.0 * lip * d + 1e-9;
        hint = { prev->beta - w, prev->beta + w };
      }
      IsentropePoint p = solve(alpha, hint);
      out.points.push_back(p);
      prev = p;
    } catch (const Error& e) {
      out.skipped.push_back({ alpha, std::string(e.category()) });
    }
  }
  if (out.points.empty()) {
    throw EmptyTraceError(fmt::format(
      "no grid point in [{}, {}] lies on the isentrope", alpha_lo, alpha_hi));
  }
  return out;
}

DomainEndpoints IsentropeSolver::endpoints(double tol) const
{
  const double alpha0 = reference_.alpha();
  const IsentropePoint start = solve(alpha0);

  auto classify = [](double alpha, double beta) {
    const std::pair<double, BoundaryKind> d[] = {
      { 1.0 - beta, BoundaryKind::top_edge },
      { beta - (1.0 - alpha), BoundaryKind::anti_diagonal },
      { beta - alpha, BoundaryKind::diagonal },
      { beta - 0.5, BoundaryKind::bottom_edge },
    };
    return std::min_element(std::begin(d), std::end(d),
                            [](auto& x, auto& y) { return x.first < y.first; })
      ->second;
  };

  auto search = [&](double direction) {
    const double edge = direction < 0 ? 0.0 : 1.0;
    IsentropePoint ok = start;
    double bad = edge;
    double step = 16.0 * tol;
    for (;;) {
      double cand = ok.alpha + direction * step;
      if (direction < 0 ? cand <= edge : cand >= edge) {
        if (std::abs(ok.alpha - edge) <= tol) {
          bad = edge;
          break;
        }
        cand = 0.5 * (ok.alpha + edge);
      }
      if (auto p = try_solve(cand)) {
        ok = *p;
        step *= 2.0;
      } else {
        bad = cand;
        break;
      }
    }
    while (std::abs(bad - ok.alpha) > tol) {
      const double mid = 0.5 * (bad + ok.alpha);
      if (auto p = try_solve(mid)) {
        ok = *p;
      } else {
        bad = mid;
      }
    }
    return EndpointBracket{ ok.alpha, bad, ok.beta,
                            classify(ok.alpha, ok.beta) };
  };

  DomainEndpoints out{ search(-1.0), search(+1.0),
                       DomainEndpoints::Status::bracketed };
  if (out.left.limit == BoundaryKind::top_edge) {
    out.status = DomainEndpoints::Status::exact_edge;
  }
  return out;
}

IsentropePoint solve_beta(const SkewTentMap& reference, double alpha,
                          std::size_t prefix_len, double beta_tol)
{
  IsentropeOptions opts;
  opts.prefix_len = prefix_len;
  opts.max_prefix_len = std::max(opts.max_prefix_len, prefix_len);
  opts.beta_tol = beta_tol;
  return IsentropeSolver(reference, opts).solve(alpha);
}

IsentropeTrace trace_isentrope(const SkewTentMap& reference, double alpha_lo,
                               double alpha_hi, std::size_t steps,
                               std::size_t prefix_len, double beta_tol)
{
  IsentropeOptions opts;
  opts.prefix_len = prefix_len;
  opts.max_prefix_len = std::max(opts.max_prefix_len, prefix_len);
  opts.beta_tol = beta_tol;
  return IsentropeSolver(reference, opts).trace(alpha_lo, alpha_hi, steps);
}

DomainEndpoints domain_endpoints(const SkewTentMap& reference,
                                 std::size_t prefix_len, double tol)
{
  IsentropeOptions opts;
  opts.prefix_len = prefix_len;
  opts.max_prefix_len = std::max(opts.max_prefix_len, prefix_len);
  return IsentropeSolver(reference, opts).endpoints(tol);
}

void write_trace_csv(std::ostream& out, const IsentropeTrace& trace)
{
  out << "alpha,beta,theta_residual,slope\n";
  for (const auto& p : trace.points) {
    out << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g}\n", p.alpha, p.beta,
                       p.theta_residual, p.slope);
  }
}

void write_trace_json(std::ostream& out, const IsentropeTrace& trace)
{
  nlohmann::ordered_json j;
  j["reference"] = { { "alpha", trace.reference_map.alpha() },
                     { "beta", trace.reference_map.beta() } };
  j["alpha_lo"] = trace.alpha_lo;
  j["alpha_hi"] = trace.alpha_hi;
  auto& pts = j["points"] = nlohmann::ordered_json::array();
  for (const auto& p : trace.points) {
    nlohmann::ordered_json row;
    row["alpha"] = p.alpha;
    row["beta"] = p.beta;
    row["theta_residual"] = p.theta_residual;
    row["slope"] = p.slope;
    row["bracket_width"] = p.bracket_width;
    row["prefix_len"] = p.prefix_len;
    pts.push_back(std::move(row));
  }
  auto& skipped = j["skipped"] = nlohmann::ordered_json::array();
  for (const auto& s : trace.skipped) {
    skipped.push_back({ { "alpha", s.alpha }, { "reason", s.reason } });
  }
  out << j.dump(2) << '\n';
}

} // namespace skewtent
