#include "skewtent/markov.hpp"

#include "skewtent/error.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace skewtent {

std::optional<std::size_t> detect_markov(const SkewTentMap& map,
                                         std::size_t max_iter, double tol)
{
  double x = map.beta();
  for (std::size_t n = 1; n <= max_iter; ++n) {
    x = map.step(x);
    if (std::abs(x - map.alpha()) <= tol) {
      return n;
    }
  }
  return std::nullopt;
}

std::optional<MarkovClosure> find_markov_closure(const SkewTentMap& map,
                                                 std::size_t max_iter,
                                                 double tol)
{
  auto near = [tol](double x, double y) { return std::abs(x - y) <= tol; };
  std::vector<double> orbit;
  double x = map.beta();
  for (std::size_t n = 0; n <= max_iter; ++n) {
    if (near(x, map.alpha())) {
      return MarkovClosure{ std::max<std::size_t>(n, 1),
                            ClosureKind::periodic_turning_point };
    }
    const bool hits = near(x, 0.0) || near(x, 1.0) ||
                      std::any_of(orbit.begin(), orbit.end(),
                                  [&](double y) { return near(x, y); });
    if (hits) {
      return MarkovClosure{ std::max<std::size_t>(n, 1),
                            ClosureKind::preperiodic };
    }
    orbit.push_back(x);
    x = map.step(x);
  }
  return std::nullopt;
}

namespace {

std::size_t match_point(const std::vector<double>& points, double x)
{
  auto it = std::lower_bound(points.begin(), points.end(), x);
  std::size_t best = points.size();
  double best_dist = kCellMatchTol;
  for (auto cand : { it, it == points.begin() ? it : it - 1 }) {
    if (cand == points.end()) {
      continue;
    }
    const double d = std::abs(*cand - x);
    if (d <= best_dist) {
      best_dist = d;
      best = static_cast<std::size_t>(cand - points.begin());
    }
  }
  return best;
}

// Index range [first, last) of the cells covered by the image of cell j.
struct CellImage
{
  std::size_t first;
  std::size_t last;
  double inverse_slope;
};

CellImage image_of_cell(const SkewTentMap& map, const MarkovPartition& part,
                        std::size_t j)
{
  const double left = part.points[j];
  const double right = part.points[j + 1];
  const bool on_left_branch = j < part.alpha_index;
  // Evaluate the branch that owns the cell at both ends, so that T(alpha)
  // is beta from either side.
  auto branch = [&](double x) {
    return on_left_branch ? map.beta() * (x / map.alpha())
                          : map.beta() * ((1.0 - x) / (1.0 - map.alpha()));
  };
  double lo = branch(left);
  double hi = branch(right);
  if (lo > hi) {
    std::swap(lo, hi);
  }
  const std::size_t i_lo = match_point(part.points, lo);
  const std::size_t i_hi = match_point(part.points, hi);
  if (i_lo == part.points.size() || i_hi == part.points.size() ||
      i_lo >= i_hi) {
    throw MarkovViolationError(fmt::format(
      "image [{:.17g}, {:.17g}] of cell [{:.17g}, {:.17g}] is not a union of "
      "partition cells",
      lo, hi, left, right));
  }
  const BranchSlopes s = branch_slopes(map);
  return { i_lo, i_hi, 1.0 / (on_left_branch ? s.lambda_slope : s.mu_slope) };
}

} // namespace

MarkovPartition markov_partition(const SkewTentMap& map, std::size_t period)
{
  if (period == 0) {
    throw DomainError("a Markov partition needs at least the point beta");
  }
  std::vector<double> raw{ 0.0, map.alpha(), 1.0 };
  double x = map.beta();
  for (std::size_t k = 0; k < period; ++k) {
    raw.push_back(x);
    x = map.step(x);
  }
  std::sort(raw.begin(), raw.end());

  // Merge near-duplicates, preferring the exact anchors 0, alpha, beta, 1.
  auto anchored = [&](double v) {
    return v == 0.0 || v == 1.0 || v == map.alpha() || v == map.beta();
  };
  std::vector<double> points;
  for (double v : raw) {
    if (!points.empty() && v - points.back() <= kMarkovTol) {
      if (anchored(v)) {
        points.back() = v;
      }
      continue;
    }
    points.push_back(v);
  }

  MarkovPartition part;
  part.points = std::move(points);
  part.period = period;
  auto index_of = [&](double v) {
    return static_cast<std::size_t>(
      std::find(part.points.begin(), part.points.end(), v) -
      part.points.begin());
  };
  part.alpha_index = index_of(map.alpha());
  part.beta_index = index_of(map.beta());
  if (part.alpha_index == part.points.size() ||
      part.beta_index == part.points.size()) {
    throw MarkovViolationError("alpha or beta was merged away");
  }
  for (std::size_t j = 0; j < part.cells(); ++j) {
    image_of_cell(map, part, j);
  }
  return part;
}

std::vector<double> TransferMatrix::apply(const std::vector<double>& values) const
{
  Eigen::Map<const Eigen::VectorXd> v(values.data(),
                                      static_cast<Eigen::Index>(values.size()));
  Eigen::VectorXd r = entries * v;
  return { r.data(), r.data() + r.size() };
}

TransferMatrix transfer_matrix(const SkewTentMap& map,
                               const MarkovPartition& partition)
{
  const auto k = static_cast<Eigen::Index>(partition.cells());
  TransferMatrix tm;
  tm.entries = Eigen::MatrixXd::Zero(k, k);
  tm.cell_lengths.reserve(partition.cells());
  for (std::size_t i = 0; i < partition.cells(); ++i) {
    tm.cell_lengths.push_back(partition.cell_length(i));
  }
  for (Eigen::Index j = 0; j < k; ++j) {
    const CellImage img =
      image_of_cell(map, partition, static_cast<std::size_t>(j));
    for (std::size_t i = img.first; i < img.last; ++i) {
      tm.entries(static_cast<Eigen::Index>(i), j) += img.inverse_slope;
    }
  }
  return tm;
}

double PiecewiseDensity::operator()(double x) const
{
  const auto& pts = partition.points;
  if (x < pts.front() || x > pts.back()) {
    return 0.0;
  }
  auto it = std::upper_bound(pts.begin(), pts.end(), x);
  std::size_t cell = static_cast<std::size_t>(it - pts.begin());
  cell = cell == 0 ? 0 : cell - 1;
  cell = std::min(cell, values.size() - 1);
  return values[cell];
}

double PiecewiseDensity::mass(double lo, double hi) const
{
  double total = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double a = std::max(lo, partition.points[i]);
    const double b = std::min(hi, partition.points[i + 1]);
    if (b > a) {
      total += values[i] * (b - a);
    }
  }
  return total;
}

PiecewiseDensity invariant_density(const TransferMatrix& matrix,
                                   const MarkovPartition& partition)
{
  const auto k = static_cast<Eigen::Index>(matrix.size());
  const Eigen::MatrixXd a =
    matrix.entries - Eigen::MatrixXd::Identity(k, k);

  Eigen::FullPivLU<Eigen::MatrixXd> rank_probe(a);
  rank_probe.setThreshold(1e-9);
  if (rank_probe.dimensionOfKernel() > 1) {
    throw NonUniqueError(fmt::format(
      "transfer matrix has a {}-dimensional fixed space",
      rank_probe.dimensionOfKernel()));
  }

  // Lengths weight the rows of M - I into zero, so any one row is redundant;
  // replace the last with the normalisation sum(v_i len_i) = 1.
  Eigen::MatrixXd system = a;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k);
  for (Eigen::Index j = 0; j < k; ++j) {
    system(k - 1, j) = matrix.cell_lengths[static_cast<std::size_t>(j)];
  }
  rhs(k - 1) = 1.0;
  const Eigen::VectorXd v = system.partialPivLu().solve(rhs);

  PiecewiseDensity density{ partition, {} };
  density.values.reserve(static_cast<std::size_t>(k));
  for (Eigen::Index i = 0; i < k; ++i) {
    if (v(i) < -1e-9) {
      throw NegativeDensityError(
        fmt::format("solved density {:.3g} on cell {}", v(i), i));
    }
    // Cells outside the dynamical core carry round-off only.
    const bool noise = std::abs(v(i)) <= 1e-12 * v.cwiseAbs().maxCoeff();
    density.values.push_back(noise ? 0.0 : std::max(v(i), 0.0));
  }
  return density;
}

double gamma_exact(const PiecewiseDensity& density, double alpha)
{
  double gamma = 0.0;
  for (std::size_t i = 0; i < density.values.size(); ++i) {
    if (density.partition.points[i + 1] <= alpha) {
      gamma += density.values[i] * density.partition.cell_length(i);
    }
  }
  return gamma;
}

TangentEstimate lyapunov_exact(const SkewTentMap& map,
                               const PiecewiseDensity& density)
{
  return TangentEstimate::from_gamma(map.alpha(), map.beta(),
                                     gamma_exact(density, map.alpha()),
                                     TangentMethod::markov_exact);
}

std::optional<double> markov_parameter_near(double alpha, double beta_guess,
                                            std::size_t max_period,
                                            double radius)
{
  const double floor = std::max({ 0.5, 1.0 - alpha, alpha });
  const double lo = std::max(beta_guess - radius, std::nextafter(floor, 2.0));
  const double hi = std::min(beta_guess + radius, 1.0);
  if (!(lo < hi)) {
    return std::nullopt;
  }
  // g_n(beta) = T^n(beta) - alpha
  auto residual = [alpha](double beta, std::size_t n) {
    const SkewTentMap map(alpha, beta);
    double x = beta;
    for (std::size_t i = 0; i < n; ++i) {
      x = map.step(x);
    }
    return x - alpha;
  };

  std::optional<double> best;
  constexpr int kSamples = 2000;
  for (std::size_t n = 1; n <= max_period; ++n) {
    double prev_b = lo;
    double prev_g = residual(lo, n);
    for (int s = 1; s <= kSamples; ++s) {
      const double b = lo + (hi - lo) * s / kSamples;
      const double g = residual(b, n);
      if ((prev_g < 0.0) != (g < 0.0)) {
        // g_n is continuous in beta, so the sign change brackets a root.
        double a0 = prev_b;
        double b0 = b;
        double ga = prev_g;
        for (int it = 0; it < 200 && b0 - a0 > 0.0; ++it) {
          const double mid = 0.5 * (a0 + b0);
          if (mid <= a0 || mid >= b0) {
            break;
          }
          const double gm = residual(mid, n);
          if ((gm < 0.0) == (ga < 0.0)) {
            a0 = mid;
            ga = gm;
          } else {
            b0 = mid;
          }
        }
        const double root = std::abs(residual(a0, n)) <= std::abs(residual(b0, n))
                              ? a0
                              : b0;
        const SkewTentMap candidate(alpha, root);
        const auto period = detect_markov(candidate, max_period, kMarkovTol);
        if (period && (!best || std::abs(root - beta_guess) <
                                  std::abs(*best - beta_guess))) {
          best = root;
        }
      }
      prev_b = b;
      prev_g = g;
    }
  }
  return best;
}

void write_density_csv(std::ostream& out, const PiecewiseDensity& density)
{
  out << "cell_left,cell_right,value\n";
  for (std::size_t i = 0; i < density.values.size(); ++i) {
    out << fmt::format("{:.17g},{:.17g},{:.17g}\n",
                       density.partition.points[i],
                       density.partition.points[i + 1], density.values[i]);
  }
}

} // namespace skewtent
