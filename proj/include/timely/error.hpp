#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace timely {

enum class ErrorKind {
    IndeterminateSum,
    ParseError,
    ModelMismatch,
    UnknownAction,
    SelfConstraint,
    DomainMismatch,
    InvalidSchedule,
    NegInfEntry,
    Unsatisfiable,
    InfiniteEntry,
    FiniteEntry,
    TooLarge,
};

std::string_view to_string(ErrorKind kind);

/// Every recoverable failure in the library is reported as an Error carrying
/// its kind, so callers (the CLI in particular) can branch without parsing
/// messages.
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

}  // namespace timely
