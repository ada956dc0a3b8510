#pragma once

#include <stdexcept>
#include <string>

namespace pslgrow {

enum class ErrorKind {
    InvalidModulus,
    FieldMismatch,
    ZeroElement,
    ResourceBudget,
    UnsupportedCongruence,
    DegenerateTable,
    UnsupportedPeriod,
    MissingPeriod,
    ConditionViolated,
    NumericInstability,
    NoFuchsianGroup,
    BadInput,
};

/// Domain error carrying a machine-checkable kind next to the human reason.
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

} // namespace pslgrow
