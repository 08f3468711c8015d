#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qce {

enum class ErrorCode {
    BadShape,
    NonFinite,
    NotHermitian,
    NotPSD,
    BadTrace,
    NotProjector,
    NotResolution,
    DimMismatch,
    ClusterAmbiguity,
    ZeroCompression,
    NotApplicable,
    NotCommuting,
    NotStrictlyPositive,
    NoConvergence,
    InvalidPartitionData,
    InvalidConfig,
    ParseError,
    ValidationError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so that
/// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

    /// True for codes that mean "the input violated a type invariant" as opposed
    /// to a malformed document or an algorithmic failure.
    [[nodiscard]] bool is_validation() const noexcept;

private:
    ErrorCode code_;
};

}  // namespace qce
