#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hgv {

enum class ErrorCode {
    EmptyEdge,
    BadMultiplicity,
    VertexOutOfRange,
    BadParams,
    ParseError,
    NotACover,
    NotIndependent,
    ZeroStrength,
    InfeasibleColoring,
    BudgetExceeded,
    BadNu,
    BadGap,
    BadOrder,
    BadSupport,
    OrderTooHigh,
    NotQubit,
    NumericallyUnstable,
    Internal,
};

std::string_view error_code_name(ErrorCode code);

/// Every recoverable failure in the library is reported as an `Error` carrying
/// a stable machine-readable code; the CLI maps these to exit status 2.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string &message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string &message) {
    throw Error(code, message);
}

}  // namespace hgv
