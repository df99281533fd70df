#pragma once

#include "skewtent/kneading.hpp"
#include "skewtent/map.hpp"
#include "skewtent/theta.hpp"

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace skewtent {

struct IsentropeOptions
{
  std::size_t prefix_len = kDefaultPrefixLength;
  /// Ambiguous comparisons double the prefix up to this length.
  std::size_t max_prefix_len = 1600;
  double beta_tol = 1e-12;
  double c_tol = kDefaultCTol;
  /// Used for the residual certificate and the implicit slope.
  ThetaOptions theta{ 1e-12, 10000, false };
};

/// A parameter on the isentrope of the reference kneading sequence.
struct IsentropePoint
{
  double alpha;
  double beta;
  double theta_residual; // Theta of the reference blocks at (alpha, beta)
  double theta_tail_bound;
  double slope;         // implicit slope from the reference blocks
  double bracket_width; // final beta bracket, or plateau width
  std::size_t prefix_len;
};

struct SkippedAlpha
{
  double alpha;
  std::string reason; // error category
};

struct IsentropeTrace
{
  SkewTentMap reference_map;
  std::vector<IsentropePoint> points; // strictly increasing alpha
  double alpha_lo;
  double alpha_hi;
  std::vector<SkippedAlpha> skipped;
};

enum class BoundaryKind
{
  top_edge,      // beta -> 1
  anti_diagonal, // beta -> 1 - alpha
  diagonal,      // beta -> alpha
  bottom_edge,   // beta -> 1/2
};

std::string_view to_string(BoundaryKind kind) noexcept;

struct EndpointBracket
{
  double solvable_alpha;
  double unsolvable_alpha; // or the end of (0, 1)
  double beta_at_solvable;
  BoundaryKind limit; // boundary of U nearest to the last solved point
};

struct DomainEndpoints
{
  enum class Status
  {
    exact_edge, // the curve rises to beta = 1 at its left end
    bracketed,
  };

  EndpointBracket left;
  EndpointBracket right;
  Status status;

  double alpha_1() const noexcept { return left.solvable_alpha; }
  double alpha_2() const noexcept { return right.solvable_alpha; }
};

/// Solves beta = Psi_M(alpha) for the kneading sequence M of a reference map
/// by bisection on the kneading order, which increases with beta at fixed
/// alpha.
class IsentropeSolver
{
public:
  explicit IsentropeSolver(SkewTentMap reference,
                           IsentropeOptions options = {});

  const SkewTentMap& reference() const noexcept { return reference_; }
  const IsentropeOptions& options() const noexcept { return options_; }

  /// Throws NotBracketedError when the reference kneading is outside the
  /// range attained on {alpha} x (floor, 1], AmbiguousError when even the
  /// longest prefix cannot resolve beta to beta_tol.
  IsentropePoint solve(double alpha) const;

  /// Tries the hint bracket first and falls back to the full range.
  IsentropePoint solve(double alpha, Interval hint) const;

  std::optional<IsentropePoint> try_solve(double alpha) const;

  IsentropeTrace trace(double alpha_lo, double alpha_hi,
                       std::size_t steps) const;

  DomainEndpoints endpoints(double tol = 1e-4) const;

private:
  IsentropePoint solve_at_length(double alpha, std::size_t prefix_len,
                                 std::optional<Interval> hint) const;

  SkewTentMap reference_;
  IsentropeOptions options_;
};

IsentropePoint solve_beta(const SkewTentMap& reference, double alpha,
                          std::size_t prefix_len = kDefaultPrefixLength,
                          double beta_tol = 1e-12);

IsentropeTrace trace_isentrope(const SkewTentMap& reference, double alpha_lo,
                               double alpha_hi, std::size_t steps,
                               std::size_t prefix_len = kDefaultPrefixLength,
                               double beta_tol = 1e-12);

DomainEndpoints domain_endpoints(const SkewTentMap& reference,
                                 std::size_t prefix_len = kDefaultPrefixLength,
                                 double tol = 1e-4);

/// Lowest beta for which (alpha, beta) is in U is above this value.
double beta_floor(double alpha) noexcept;

void write_trace_csv(std::ostream& out, const IsentropeTrace& trace);
void write_trace_json(std::ostream& out, const IsentropeTrace& trace);

} // namespace skewtent
