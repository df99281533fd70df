#pragma once

#include "skewtent/map.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace skewtent {

enum class Symbol : char
{
  L = 'L',
  C = 'C',
  R = 'R',
};

/// Base order L < C < R.
constexpr int symbol_rank(Symbol s) noexcept
{
  switch (s) {
    case Symbol::L:
      return 0;
    case Symbol::C:
      return 1;
    case Symbol::R:
      return 2;
  }
  return -1;
}

inline constexpr double kDefaultCTol = 1e-12;
inline constexpr std::size_t kDefaultPrefixLength = 200;

/// Itinerary of the turning point. A C-terminated sequence holds exactly one
/// C, in the last position; an open prefix holds none.
class KneadingSequence
{
public:
  enum class Kind
  {
    c_terminated,
    open_prefix,
  };

  KneadingSequence() = default;

  /// Throws MalformedError if C appears anywhere but the last position.
  /// absorbed_at_zero marks an open prefix whose orbit reached the fixed
  /// point 0, so every later symbol is known to be L.
  explicit KneadingSequence(std::vector<Symbol> symbols,
                            bool absorbed_at_zero = false);

  /// Parses a string over {L, C, R}.
  static KneadingSequence parse(std::string_view text);

  const std::vector<Symbol>& symbols() const noexcept { return symbols_; }
  std::size_t size() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }
  Kind kind() const noexcept { return kind_; }
  bool c_terminated() const noexcept { return kind_ == Kind::c_terminated; }
  bool absorbed_at_zero() const noexcept { return absorbed_at_zero_; }

  std::string str() const;

  friend bool operator==(const KneadingSequence&,
                         const KneadingSequence&) = default;

private:
  std::vector<Symbol> symbols_;
  Kind kind_ = Kind::open_prefix;
  bool absorbed_at_zero_ = false;
};

/// First n symbols of the itinerary of alpha, i.e. the positions of
/// T(alpha), T^2(alpha), ... relative to alpha. Stops with C as soon as an
/// iterate lies within c_tol of alpha.
KneadingSequence kneading_prefix(const SkewTentMap& map,
                                 std::size_t n = kDefaultPrefixLength,
                                 double c_tol = kDefaultCTol);

/// Parity-lexicographic order: at the first differing position the base
/// order applies if the common prefix holds an even number of R symbols and
/// is reversed otherwise. A sequence that is a prefix of the other compares
/// equal.
std::strong_ordering parity_lex_compare(const KneadingSequence& a,
                                        const KneadingSequence& b);

/// Exponents of the factorisation R L^{m1} R L^{m2} R ...
struct RLBlocks
{
  enum class Tail
  {
    periodic,            // `m` is one period, repeated forever
    ends_in_L_infinity,  // finitely many blocks, then L forever
    truncated,           // `m` is what a finite prefix determines
  };

  std::vector<std::uint64_t> m;
  Tail tail = Tail::truncated;
  /// For truncated blocks: L symbols seen after the last R, a lower bound on
  /// the next (unknown) exponent.
  std::uint64_t partial_run = 0;

  /// Number of blocks this value determines exactly; unbounded for
  /// periodic tails.
  bool infinite() const noexcept { return tail == Tail::periodic; }

  /// m_k for k >= 1; only valid for k within the determined range.
  std::uint64_t block(std::size_t k) const;

  /// Cumulative exponents m̄_1..m̄_count (count may exceed m.size() only
  /// for periodic tails).
  std::vector<std::uint64_t> cumulative(std::size_t count) const;

  /// Re-reads the encoded word, n symbols long (n limited by the encoded
  /// length for non-periodic tails, except that L^infinity is expanded).
  std::string word(std::size_t n) const;
};

/// Encodes a sequence starting with R. A C-terminated sequence becomes the
/// periodic word obtained by replacing its C with L. At most max_blocks
/// blocks are kept for open prefixes.
RLBlocks rl_blocks(const KneadingSequence& seq,
                   std::size_t max_blocks = SIZE_MAX);

} // namespace skewtent
