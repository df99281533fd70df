#pragma once

#include "skewtent/birkhoff.hpp"
#include "skewtent/map.hpp"

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <ostream>
#include <vector>

namespace skewtent {

inline constexpr double kMarkovTol = 1e-9;
inline constexpr double kCellMatchTol = 1e-7;

/// Minimal n <= max_iter with |T^n(beta) - alpha| <= tol: the turning point
/// is periodic with period n + 1.
std::optional<std::size_t> detect_markov(const SkewTentMap& map,
                                         std::size_t max_iter = 100,
                                         double tol = kMarkovTol);

enum class ClosureKind
{
  periodic_turning_point, // T^n(beta) returns to alpha
  preperiodic,            // T^n(beta) lands on 0, 1 or an earlier orbit point
};

struct MarkovClosure
{
  std::size_t orbit_length; // number of points beta, ..., T^{n-1}(beta)
  ClosureKind kind;
};

/// Smallest n such that T^n(beta) lies within tol of {0, alpha, 1} or of an
/// earlier point of the beta orbit. Any such finite orbit yields a Markov
/// partition; detect_markov covers the periodic case alone.
std::optional<MarkovClosure> find_markov_closure(const SkewTentMap& map,
                                                 std::size_t max_iter = 100,
                                                 double tol = kMarkovTol);

struct MarkovPartition
{
  std::vector<double> points; // 0 = points.front() < ... < points.back() = 1
  std::size_t period;         // beta-orbit points included
  std::size_t alpha_index;
  std::size_t beta_index;

  std::size_t cells() const noexcept { return points.size() - 1; }
  double cell_length(std::size_t i) const { return points[i + 1] - points[i]; }
};

/// Partition generated by {0, alpha, 1} and beta, T(beta), ...,
/// T^{period-1}(beta). Points closer than kMarkovTol are merged. Every cell
/// is checked to map onto a union of consecutive cells (endpoints matched to
/// kCellMatchTol); throws MarkovViolationError otherwise.
MarkovPartition markov_partition(const SkewTentMap& map, std::size_t period);

/// Transfer matrix of the Frobenius-Perron operator on densities that are
/// constant on partition cells: entry (i, j) is 1/|slope| of the branch over
/// cell j when T(cell j) covers cell i.
struct TransferMatrix
{
  Eigen::MatrixXd entries;
  std::vector<double> cell_lengths;

  std::size_t size() const noexcept { return cell_lengths.size(); }
  std::vector<double> apply(const std::vector<double>& values) const;
};

TransferMatrix transfer_matrix(const SkewTentMap& map,
                               const MarkovPartition& partition);

struct PiecewiseDensity
{
  MarkovPartition partition;
  std::vector<double> values;

  /// Density at x; cells are closed on the left, the last one on both ends.
  double operator()(double x) const;
  double mass(double lo, double hi) const;
};

/// Normalised fixed point of the transfer matrix. Throws NonUniqueError when
/// M - I has a null space of dimension above one (at 1e-9) and
/// NegativeDensityError when a solved value is below -1e-9.
PiecewiseDensity invariant_density(const TransferMatrix& matrix,
                                   const MarkovPartition& partition);

/// Invariant mass of [0, alpha].
double gamma_exact(const PiecewiseDensity& density, double alpha);

TangentEstimate lyapunov_exact(const SkewTentMap& map,
                               const PiecewiseDensity& density);

/// Searches beta in [beta_guess - radius, beta_guess + radius] (clipped to U)
/// for a parameter whose turning point has period at most max_period + 1,
/// returning the one closest to beta_guess. Roots are polished by bisection
/// on T^n(beta) - alpha.
std::optional<double> markov_parameter_near(double alpha, double beta_guess,
                                            std::size_t max_period,
                                            double radius = 0.01);

/// CSV with header cell_left,cell_right,value.
void write_density_csv(std::ostream& out, const PiecewiseDensity& density);

} // namespace skewtent
