#include "levy/error.hpp"

namespace levy {

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::EmptyPrior: return "EmptyPrior";
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::ZeroMass: return "ZeroMass";
    case ErrorCode::IncompatibleSupport: return "IncompatibleSupport";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::DegenerateWeights: return "DegenerateWeights";
    case ErrorCode::UnsupportedRepresentation: return "UnsupportedRepresentation";
    case ErrorCode::GridExceedsHorizon: return "GridExceedsHorizon";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::InvalidGrid: return "InvalidGrid";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
{
}

}  // namespace levy
