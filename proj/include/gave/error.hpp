#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gave {

enum class ErrorKind {
    SingularMatrix,
    SingularSum,
    NoConvergence,
    RangeViolation,
    CapExceeded,
    InconsistencyDetected,
    ParseError,
    DimensionError,
    InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

/// Library failure tagged with its kind; the CLI prints it as {error, detail}.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail)
        : std::runtime_error(detail), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace gave
