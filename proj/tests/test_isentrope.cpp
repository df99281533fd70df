#include "oracles.hpp"

#include "skewtent/error.hpp"
#include "skewtent/isentrope.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>
#include <sstream>

using namespace skewtent;

namespace {

const SkewTentMap kGolden(0.5, oracle::kGoldenBeta);
const SkewTentMap kFullTent(0.5, 1.0);

void check_lipschitz(const IsentropeTrace& trace)
{
  for (std::size_t i = 1; i < trace.points.size(); ++i) {
    const auto& p = trace.points[i - 1];
    const auto& q = trace.points[i];
    const double secant = (q.beta - p.beta) / (q.alpha - p.alpha);
    const double beta_hi = std::max(p.beta, q.beta);
    CHECK(secant >= -beta_hi / (1.0 - q.alpha) - 1e-9);
    CHECK(secant <= beta_hi / p.alpha + 1e-9);
  }
}

} // namespace

TEST_CASE("solve_beta")
{
  const auto self = solve_beta(kGolden, 0.5);
  CHECK(std::abs(self.beta - oracle::kGoldenBeta) <= 1e-12);
  CHECK(std::abs(self.theta_residual) <= 1e-10);

  const auto top = solve_beta(kFullTent, 0.3);
  CHECK(top.beta == 1.0);
  CHECK(top.slope == 0.0);

  const auto p = solve_beta(SkewTentMap(0.3, 0.8), 0.31);
  CHECK(std::abs(p.theta_residual) < 1e-6);
  CHECK(p.beta < 0.8);
  CHECK(p.slope >= -p.beta / (1.0 - p.alpha));
  CHECK(p.slope <= p.beta / p.alpha);

  const IsentropeSolver s(SkewTentMap(0.3, 0.8));
  const auto hinted = s.solve(0.31, Interval{ 0.79, 0.83 });
  CHECK(std::abs(hinted.beta - p.beta) <= 2e-12);
  // A hint that misses the root falls back to the full bracket.
  const auto missed = s.solve(0.31, Interval{ 0.9, 0.95 });
  CHECK(std::abs(missed.beta - p.beta) <= 2e-12);
}

TEST_CASE("solve_beta errors")
{
  // The golden isentrope reaches the diagonal near alpha = 2/3.
  CHECK_THROWS_AS(solve_beta(kGolden, 0.8), NotBracketedError);
  CHECK_THROWS_AS(solve_beta(SkewTentMap(0.3, 0.8), 0.1), NotBracketedError);
  CHECK_THROWS_AS(solve_beta(kGolden, 0.0), DomainError);
  CHECK_THROWS_AS(solve_beta(kGolden, 1.0), DomainError);
  CHECK_THROWS_AS(IsentropeSolver(kGolden, { 0 }), DomainError);
  CHECK_FALSE(IsentropeSolver(kGolden).try_solve(0.8));
}

TEST_CASE("traces")
{
  const auto top = trace_isentrope(kFullTent, 0.2, 0.8, 7);
  REQUIRE(top.points.size() == 7);
  for (const auto& p : top.points) {
    CHECK(p.beta == 1.0);
  }
  CHECK(top.points.front().alpha == 0.2);
  CHECK(top.points.back().alpha == 0.8);

  const auto golden = trace_isentrope(kGolden, 0.45, 0.55, 11);
  REQUIRE(golden.points.size() == 11);
  CHECK(golden.skipped.empty());
  for (std::size_t i = 0; i < golden.points.size(); ++i) {
    const auto& p = golden.points[i];
    CHECK(std::abs(p.theta_residual) < 1e-6);
    CHECK(in_region_u(p.alpha, p.beta));
    if (i > 0) {
      CHECK(p.alpha > golden.points[i - 1].alpha);
    }
  }
  check_lipschitz(golden);
  check_lipschitz(trace_isentrope(SkewTentMap(0.6, 0.9), 0.3, 0.9, 25));

  CHECK_THROWS_AS(trace_isentrope(kGolden, 0.8, 0.9, 3), EmptyTraceError);
  CHECK_THROWS_AS(trace_isentrope(kGolden, 0.5, 0.4, 3), DomainError);
  const auto partial = trace_isentrope(kGolden, 0.5, 0.9, 9);
  REQUIRE_FALSE(partial.points.empty());
  CHECK_FALSE(partial.skipped.empty());
  CHECK(partial.skipped.front().reason == "not-bracketed");
}

TEST_CASE("implicit slope agrees with secants")
{
  for (const auto& ref : { SkewTentMap(0.3, 0.8), SkewTentMap(0.6, 0.75) }) {
    const double lo = ref.alpha() - 0.05;
    const double hi = ref.alpha() + 0.05;
    const auto trace = trace_isentrope(ref, lo, hi, 21);
    REQUIRE(trace.points.size() == 21);
    const double step = (hi - lo) / 20.0;
    for (std::size_t i = 1; i + 1 < trace.points.size(); ++i) {
      const auto& p = trace.points[i - 1];
      const auto& q = trace.points[i + 1];
      const double secant = (q.beta - p.beta) / (q.alpha - p.alpha);
      CHECK(std::abs(trace.points[i].slope - secant) <=
            std::max(1e-2, 5.0 * step));
    }
  }
}

TEST_CASE("isentropes do not cross")
{
  const SkewTentMap upper(0.5, 0.85);
  const SkewTentMap lower(0.5, 0.78);
  const auto a = trace_isentrope(upper, 0.4, 0.6, 21);
  const auto b = trace_isentrope(lower, 0.4, 0.6, 21);
  int compared = 0;
  for (const auto& p : a.points) {
    for (const auto& q : b.points) {
      if (p.alpha == q.alpha) {
        CHECK(p.beta > q.beta);
        ++compared;
      }
    }
  }
  CHECK(compared >= 15);
}

TEST_CASE("domain endpoints")
{
  const auto full = domain_endpoints(kFullTent);
  CHECK(full.alpha_1() <= 1e-4);
  CHECK(full.alpha_2() >= 1.0 - 1e-4);
  CHECK(full.status == DomainEndpoints::Status::exact_edge);

  const double tol = 1e-4;
  const auto golden = domain_endpoints(kGolden, 200, tol);
  CHECK(std::abs(golden.left.unsolvable_alpha - golden.left.solvable_alpha) <=
        tol);
  CHECK(std::abs(golden.right.unsolvable_alpha -
                 golden.right.solvable_alpha) <= tol);
  CHECK(golden.alpha_1() < 0.5);
  CHECK(golden.alpha_2() > 0.5);
  CHECK(golden.alpha_2() < 0.7);
  CHECK(golden.right.limit == BoundaryKind::diagonal);
  CHECK(golden.left.limit == BoundaryKind::top_edge);
  CHECK_NOTHROW(solve_beta(kGolden, golden.alpha_1()));
  CHECK_NOTHROW(solve_beta(kGolden, golden.alpha_2()));

  // M is compared with RLR^infinity to predict where the left end goes.
  const SkewTentMap ref(0.3, 0.8);
  const auto m = kneading_prefix(ref, 200);
  const auto rlr = KneadingSequence::parse("RL" + std::string(198, 'R'));
  const bool high = parity_lex_compare(m, rlr) >= 0;
  const auto ends = domain_endpoints(ref);
  CHECK((ends.left.limit == BoundaryKind::top_edge) == high);
  CHECK((ends.status == DomainEndpoints::Status::exact_edge) == high);
  CHECK(ends.alpha_1() < 0.3);
  if (!high) {
    // The curve ends on the anti-diagonal left of alpha = 1/2.
    CHECK(std::abs(ends.left.beta_at_solvable - (1.0 - ends.alpha_1())) <
          1e-3);
    CHECK(ends.alpha_1() < 0.5);
  }
  CHECK(ends.alpha_2() > 0.3);
}

TEST_CASE("trace export")
{
  const auto trace = trace_isentrope(kFullTent, 0.25, 0.75, 3);
  std::ostringstream csv;
  write_trace_csv(csv, trace);
  CHECK(csv.str() == "alpha,beta,theta_residual,slope\n"
                     "0.25,1,0,0\n0.5,1,0,0\n0.75,1,0,0\n");

  std::ostringstream js;
  write_trace_json(js, trace);
  const auto j = nlohmann::json::parse(js.str());
  CHECK(j["points"].size() == 3);
  CHECK(j["reference"]["beta"] == 1.0);
  CHECK(j["skipped"].empty());
}
