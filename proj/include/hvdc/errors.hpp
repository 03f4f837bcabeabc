#pragma once

#include <stdexcept>
#include <string>

namespace hvdc {

/// Typed failure causes surfaced by library operations.
enum class ErrorCode {
    InvalidSpec,
    ParseError,
    IoError,
    NonpositiveGain,
    NonpositiveVoltage,
    NonpositiveGamma,
    DimensionMismatch,
    DegenerateSystem,
    DimensionTooLarge,
    EigensolveFailure,
    VoltageFloor,
    PerUnitMissing,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    [[nodiscard]] ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

inline const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidSpec: return "INVALID_SPEC";
        case ErrorCode::ParseError: return "PARSE_ERROR";
        case ErrorCode::IoError: return "IO_ERROR";
        case ErrorCode::NonpositiveGain: return "NONPOSITIVE_GAIN";
        case ErrorCode::NonpositiveVoltage: return "NONPOSITIVE_VOLTAGE";
        case ErrorCode::NonpositiveGamma: return "NONPOSITIVE_GAMMA";
        case ErrorCode::DimensionMismatch: return "DIMENSION_MISMATCH";
        case ErrorCode::DegenerateSystem: return "DEGENERATE_SYSTEM";
        case ErrorCode::DimensionTooLarge: return "DIMENSION_TOO_LARGE";
        case ErrorCode::EigensolveFailure: return "EIGENSOLVE_FAILURE";
        case ErrorCode::VoltageFloor: return "VOLTAGE_FLOOR";
        case ErrorCode::PerUnitMissing: return "PER_UNIT_MISSING";
    }
    return "UNKNOWN";
}

}  // namespace hvdc
