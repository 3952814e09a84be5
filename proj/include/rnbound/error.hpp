#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rnbound {

/// Failure categories surfaced by the library. The CLI maps them onto exit
/// codes; verification routines map them onto report verdicts.
enum class ErrorKind {
    DimensionMismatch,
    AmbientMismatch,
    NotInSemigroup,
    InvalidArgument,
    Unsupported,
    Overflow,
    NotStabilized,
    BoundExhausted,
    HypothesisFailed,
    Internal,
};

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::AmbientMismatch: return "ambient-mismatch";
    case ErrorKind::NotInSemigroup: return "not-in-semigroup";
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::Overflow: return "overflow";
    case ErrorKind::NotStabilized: return "not-stabilized";
    case ErrorKind::BoundExhausted: return "bound-exhausted";
    case ErrorKind::HypothesisFailed: return "hypothesis-failed";
    case ErrorKind::Internal: return "internal";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace rnbound
