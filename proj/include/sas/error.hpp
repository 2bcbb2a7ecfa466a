#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sas {

enum class ErrorCode {
    InsufficientMultiplicity,
    InvalidItem,
    MixedClasses,
    InvalidBand,
    SelfExchange,
    NonMatchingParties,
    StaleOutcome,
    NoReservoir,
    InvalidConfig,
    SchemaError,
    DanglingReference,
    DuplicateId,
    UnknownFixture,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so that
// callers (and the CLI exit-status mapping) can dispatch without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InsufficientMultiplicity: return "InsufficientMultiplicity";
    case ErrorCode::InvalidItem: return "InvalidItem";
    case ErrorCode::MixedClasses: return "MixedClasses";
    case ErrorCode::InvalidBand: return "InvalidBand";
    case ErrorCode::SelfExchange: return "SelfExchange";
    case ErrorCode::NonMatchingParties: return "NonMatchingParties";
    case ErrorCode::StaleOutcome: return "StaleOutcome";
    case ErrorCode::NoReservoir: return "NoReservoir";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::DanglingReference: return "DanglingReference";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::UnknownFixture: return "UnknownFixture";
    }
    return "Unknown";
}

} // namespace sas
