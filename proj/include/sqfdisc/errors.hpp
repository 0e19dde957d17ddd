#pragma once

#include <stdexcept>
#include <string>

namespace sqfdisc {

/// A bounded search ran out of candidates. `stage` names the search.
class SearchExhausted : public std::runtime_error {
  public:
    SearchExhausted(std::string stage, const std::string& detail)
        : std::runtime_error(stage + ": " + detail), stage_(std::move(stage)) {}
    [[nodiscard]] const std::string& stage() const { return stage_; }

  private:
    std::string stage_;
};

/// An independently recomputed property disagrees with what the construction
/// promised. Always a bug, never a data condition.
class CertificationFailure : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// The requested (n, r, s, S) cannot be served: bad parity, non-prime in S, ...
class InvalidTarget : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace sqfdisc
