#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace skewtent {

/// Base class for every error raised by the library. The category is a short
/// machine-readable tag that the command-line front end prints verbatim.
class Error : public std::runtime_error
{
public:
  Error(std::string_view category, const std::string& what)
    : std::runtime_error(what)
    , category_(category)
  {}

  std::string_view category() const noexcept { return category_; }

private:
  std::string_view category_;
};

#define SKEWTENT_ERROR(Name, tag)                                              \
  class Name : public Error                                                    \
  {                                                                            \
  public:                                                                      \
    explicit Name(const std::string& what)                                     \
      : Error(tag, what)                                                       \
    {}                                                                         \
  }

SKEWTENT_ERROR(DomainError, "domain");
SKEWTENT_ERROR(RegionError, "region");
SKEWTENT_ERROR(MalformedError, "malformed");
SKEWTENT_ERROR(DegenerateGradientError, "degenerate-gradient");
SKEWTENT_ERROR(NotBracketedError, "not-bracketed");
SKEWTENT_ERROR(AmbiguousError, "ambiguous");
SKEWTENT_ERROR(EmptyTraceError, "empty-trace");
SKEWTENT_ERROR(MarkovViolationError, "markov-violation");
SKEWTENT_ERROR(NonUniqueError, "non-unique");
SKEWTENT_ERROR(NegativeDensityError, "negative-density");

#undef SKEWTENT_ERROR

/// Raised when a truncated series cannot certify the requested tolerance.
class TruncationError : public Error
{
public:
  TruncationError(const std::string& what, double achievable_bound)
    : Error("truncation", what)
    , achievable_bound_(achievable_bound)
  {}

  double achievable_bound() const noexcept { return achievable_bound_; }

private:
  double achievable_bound_;
};

} // namespace skewtent
