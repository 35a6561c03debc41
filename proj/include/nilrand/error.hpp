#pragma once

#include <stdexcept>
#include <string>

namespace nilrand {

enum class ErrorCode {
    invalid_rank,
    invalid_length,
    wrong_rank,
    central_element,
    degenerate_relator,
    empty_relator_set,
    infinite_group,
    cap_exceeded,
    shape,
    divergence,
    unsupported,
    invalid_prime,
    invalid_argument,
    internal,
};

inline const char* to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::invalid_rank: return "invalid-rank";
    case ErrorCode::invalid_length: return "invalid-length";
    case ErrorCode::wrong_rank: return "wrong-rank";
    case ErrorCode::central_element: return "central-element";
    case ErrorCode::degenerate_relator: return "degenerate-relator";
    case ErrorCode::empty_relator_set: return "empty-relator-set";
    case ErrorCode::infinite_group: return "infinite-group";
    case ErrorCode::cap_exceeded: return "cap-exceeded";
    case ErrorCode::shape: return "shape";
    case ErrorCode::divergence: return "divergence";
    case ErrorCode::unsupported: return "unsupported";
    case ErrorCode::invalid_prime: return "invalid-prime";
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::internal: return "internal";
    }
    return "unknown";
}

/// All library failures are reported as this exception; `code()` tells
/// callers which precondition was violated.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace nilrand
