#include "oracles.hpp"

#include "skewtent/error.hpp"
#include "skewtent/kneading.hpp"

#include <doctest.h>
#include <random>

using namespace skewtent;

namespace {

KneadingSequence seq(const char* s)
{
  return KneadingSequence::parse(s);
}

// Itinerary straight from the map formula.
std::string itinerary(double a, double b, std::size_t n)
{
  std::string out;
  double x = a;
  for (std::size_t i = 0; i < n; ++i) {
    x = oracle::tent(a, b, x);
    out.push_back(x < a ? 'L' : (x > a ? 'R' : 'C'));
  }
  return out;
}

} // namespace

TEST_CASE("kneading prefixes")
{
  auto full = kneading_prefix(SkewTentMap(0.5, 1.0), 5, 0.0);
  CHECK(full.str() == "RLLLL");
  CHECK(full.kind() == KneadingSequence::Kind::open_prefix);
  CHECK(full.absorbed_at_zero());

  auto golden = kneading_prefix(SkewTentMap(0.5, 0.80902), 5, 1e-9);
  // 0.80902 is only close to the golden parameter; the C tolerance decides.
  golden = kneading_prefix(SkewTentMap(0.5, oracle::kGoldenBeta), 5, 1e-9);
  CHECK(golden.str() == "RLC");
  CHECK(golden.c_terminated());

  const auto t = kneading_prefix(SkewTentMap(0.3, 0.8), 3, 0.0);
  CHECK(t.size() == 3);
  CHECK(t.symbols().front() == Symbol::R);
  CHECK_FALSE(t.c_terminated());
  CHECK(t.str() == itinerary(0.3, 0.8, 3));
  CHECK(kneading_prefix(SkewTentMap(0.3, 0.8), 40).str() ==
        itinerary(0.3, 0.8, 40));
}

TEST_CASE("sequence validation")
{
  CHECK_THROWS_AS(seq("RCL"), MalformedError);
  CHECK_THROWS_AS(seq("RXL"), MalformedError);
  CHECK(seq("RLC").c_terminated());
  CHECK_FALSE(seq("RLR").c_terminated());
}

TEST_CASE("parity-lexicographic comparison")
{
  CHECK(parity_lex_compare(seq("RLL"), seq("RLL")) == 0);
  // One R precedes the difference, so L > R there.
  CHECK(parity_lex_compare(seq("RL"), seq("RR")) > 0);
  CHECK(parity_lex_compare(seq("LL"), seq("RL")) < 0);
  CHECK(parity_lex_compare(seq("RRL"), seq("RRR")) < 0);
  CHECK(parity_lex_compare(seq("RLC"), seq("RLR")) > 0);
  CHECK(parity_lex_compare(seq("RLC"), seq("RLL")) < 0);
  // Prefix semantics.
  CHECK(parity_lex_compare(seq("RL"), seq("RLRRL")) == 0);
}

TEST_CASE("parity-lexicographic order is total on fixed-length words")
{
  std::mt19937_64 gen(11);
  auto random_word = [&](std::size_t n) {
    std::string w;
    for (std::size_t i = 0; i < n; ++i) {
      w.push_back((gen() & 1) ? 'R' : 'L');
    }
    if (gen() % 4 == 0) {
      w.back() = 'C';
    }
    return KneadingSequence::parse(w);
  };
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 1 + gen() % 6;
    const auto a = random_word(n);
    const auto b = random_word(n);
    const auto c = random_word(n);
    const auto ab = parity_lex_compare(a, b);
    CHECK((0 <=> ab) == parity_lex_compare(b, a));
    CHECK((ab == 0) == (a.symbols() == b.symbols()));
    if (ab <= 0 && parity_lex_compare(b, c) <= 0) {
      CHECK(parity_lex_compare(a, c) <= 0);
    }
  }
}

TEST_CASE("kneading is monotone in beta")
{
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int checked = 0;
  while (checked < 500) {
    const auto [a, b1] = oracle::random_in_u(gen);
    const double b2 = b1 + (1.0 - b1) * u(gen);
    if (!(b2 > b1) || !in_region_u(a, b2)) {
      continue;
    }
    const std::size_t n = 1 + gen() % 30;
    const auto k1 = kneading_prefix(SkewTentMap(a, b1), n);
    const auto k2 = kneading_prefix(SkewTentMap(a, b2), n);
    INFO("alpha=", a, " beta1=", b1, " beta2=", b2, " ", k1.str(), " ",
         k2.str());
    CHECK(parity_lex_compare(k1, k2) <= 0);
    CHECK(k1.symbols().front() == Symbol::R);
    ++checked;
  }
}

TEST_CASE("RL blocks")
{
  const auto golden = rl_blocks(seq("RLC"));
  CHECK(golden.tail == RLBlocks::Tail::periodic);
  CHECK(golden.m == std::vector<std::uint64_t>{ 2 });
  CHECK(golden.word(9) == "RLLRLLRLL");
  CHECK(golden.cumulative(3) == std::vector<std::uint64_t>{ 2, 4, 6 });

  const auto top = rl_blocks(kneading_prefix(SkewTentMap(0.5, 1.0), 8));
  CHECK(top.tail == RLBlocks::Tail::ends_in_L_infinity);
  CHECK(top.m.empty());
  CHECK(top.word(6) == "RLLLLL");

  const auto rlrl = rl_blocks(seq("RLRL"));
  CHECK(rlrl.tail == RLBlocks::Tail::truncated);
  CHECK(rlrl.m == std::vector<std::uint64_t>{ 1 });
  CHECK(rlrl.partial_run == 1);
  CHECK(rlrl.word(4) == "RLRL");

  // A parsed all-L prefix is not known to stay at L forever.
  CHECK(rl_blocks(seq("RLLL")).tail == RLBlocks::Tail::truncated);

  const auto capped = rl_blocks(seq("RRLRLLR"), 2);
  CHECK(capped.m == std::vector<std::uint64_t>{ 0, 1 });
  CHECK(capped.partial_run == 0);

  CHECK_THROWS_AS(rl_blocks(seq("LRL")), MalformedError);
  CHECK_THROWS_AS(rl_blocks(KneadingSequence{}), MalformedError);
}

TEST_CASE("RL blocks round trip C-terminated sequences")
{
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 300; ++trial) {
    std::string w = "R";
    const std::size_t n = 1 + gen() % 12;
    for (std::size_t i = 0; i < n; ++i) {
      w.push_back((gen() & 1) ? 'R' : 'L');
    }
    w.push_back('C');
    const auto blocks = rl_blocks(KneadingSequence::parse(w));
    std::string period = w;
    period.back() = 'L';
    std::string expected;
    while (expected.size() < 3 * period.size()) {
      expected += period;
    }
    CHECK(blocks.word(expected.size()) == expected);
  }
}
