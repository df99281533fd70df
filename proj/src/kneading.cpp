#include "skewtent/kneading.hpp"

#include "skewtent/error.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace skewtent {

KneadingSequence::KneadingSequence(std::vector<Symbol> symbols,
                                   bool absorbed_at_zero)
  : symbols_(std::move(symbols))
{
  auto first_c = std::find(symbols_.begin(), symbols_.end(), Symbol::C);
  if (first_c != symbols_.end() && first_c + 1 != symbols_.end()) {
    throw MalformedError("C may only appear as the last kneading symbol");
  }
  kind_ = first_c == symbols_.end() ? Kind::open_prefix : Kind::c_terminated;
  absorbed_at_zero_ = absorbed_at_zero && kind_ == Kind::open_prefix;
}

KneadingSequence KneadingSequence::parse(std::string_view text)
{
  std::vector<Symbol> symbols;
  symbols.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case 'L':
        symbols.push_back(Symbol::L);
        break;
      case 'C':
        symbols.push_back(Symbol::C);
        break;
      case 'R':
        symbols.push_back(Symbol::R);
        break;
      default:
        throw MalformedError(
          fmt::format("unexpected character '{}' in kneading sequence", c));
    }
  }
  return KneadingSequence(std::move(symbols));
}

std::string KneadingSequence::str() const
{
  std::string out;
  out.reserve(symbols_.size());
  for (Symbol s : symbols_) {
    out.push_back(static_cast<char>(s));
  }
  return out;
}

KneadingSequence kneading_prefix(const SkewTentMap& map, std::size_t n,
                                 double c_tol)
{
  if (n == 0) {
    throw DomainError("kneading prefix length must be at least 1");
  }
  const double alpha = map.alpha();
  std::vector<Symbol> symbols;
  symbols.reserve(n);
  double x = alpha;
  bool absorbed = false;
  for (std::size_t i = 0; i < n; ++i) {
    x = map.step(x);
    if (std::abs(x - alpha) <= c_tol) {
      symbols.push_back(Symbol::C);
      break;
    }
    symbols.push_back(x < alpha ? Symbol::L : Symbol::R);
    if (x == 0.0) {
      absorbed = true;
    }
  }
  return KneadingSequence(std::move(symbols), absorbed);
}

std::strong_ordering parity_lex_compare(const KneadingSequence& a,
                                        const KneadingSequence& b)
{
  const auto& sa = a.symbols();
  const auto& sb = b.symbols();
  const std::size_t common = std::min(sa.size(), sb.size());
  bool odd = false;
  for (std::size_t i = 0; i < common; ++i) {
    if (sa[i] != sb[i]) {
      auto base = symbol_rank(sa[i]) <=> symbol_rank(sb[i]);
      return odd ? 0 <=> base : base;
    }
    if (sa[i] == Symbol::R) {
      odd = !odd;
    }
  }
  return std::strong_ordering::equal;
}

std::uint64_t RLBlocks::block(std::size_t k) const
{
  if (k == 0) {
    throw DomainError("block index is 1-based");
  }
  if (tail == Tail::periodic) {
    return m[(k - 1) % m.size()];
  }
  if (k > m.size()) {
    throw DomainError(fmt::format("block {} is not determined", k));
  }
  return m[k - 1];
}

std::vector<std::uint64_t> RLBlocks::cumulative(std::size_t count) const
{
  std::vector<std::uint64_t> out;
  out.reserve(count);
  std::uint64_t sum = 0;
  for (std::size_t k = 1; k <= count; ++k) {
    sum += block(k);
    out.push_back(sum);
  }
  return out;
}

std::string RLBlocks::word(std::size_t n) const
{
  std::string out;
  out.reserve(n);
  std::size_t k = 1;
  while (out.size() < n) {
    if (tail != Tail::periodic && k > m.size()) {
      if (tail == Tail::ends_in_L_infinity) {
        out.push_back('R');
        out.append(n > out.size() ? n - out.size() : 0, 'L');
      } else {
        out.push_back('R');
        out.append(std::min<std::uint64_t>(partial_run, n - out.size()), 'L');
      }
      break;
    }
    out.push_back('R');
    out.append(std::min<std::uint64_t>(block(k), n - out.size()), 'L');
    ++k;
  }
  out.resize(std::min(out.size(), n));
  return out;
}

RLBlocks rl_blocks(const KneadingSequence& seq, std::size_t max_blocks)
{
  const auto& symbols = seq.symbols();
  if (symbols.empty() || symbols.front() != Symbol::R) {
    throw MalformedError(fmt::format(
      "RL blocks need a sequence starting with R, got '{}'", seq.str()));
  }

  RLBlocks blocks;
  std::uint64_t run = 0;
  bool truncated_by_cap = false;
  for (std::size_t i = 1; i < symbols.size(); ++i) {
    if (symbols[i] == Symbol::R) {
      if (blocks.m.size() == max_blocks) {
        truncated_by_cap = true;
        break;
      }
      blocks.m.push_back(run);
      run = 0;
    } else {
      // C counts as L.
      ++run;
    }
  }

  if (seq.c_terminated()) {
    // The periodic word repeats from the leading R, so the trailing run
    // closes the last block of the period.
    blocks.m.push_back(run);
    blocks.tail = RLBlocks::Tail::periodic;
  } else if (seq.absorbed_at_zero() && !truncated_by_cap) {
    blocks.tail = RLBlocks::Tail::ends_in_L_infinity;
  } else {
    blocks.tail = RLBlocks::Tail::truncated;
    blocks.partial_run = truncated_by_cap ? 0 : run;
  }
  return blocks;
}

} // namespace skewtent
