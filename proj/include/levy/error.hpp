#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace levy {

enum class ErrorCode {
    InvalidParameter,
    OutOfDomain,
    OutOfRange,
    EmptyPrior,
    NonPositiveWeight,
    ZeroMass,
    IncompatibleSupport,
    NonFiniteValue,
    DegenerateWeights,
    UnsupportedRepresentation,
    GridExceedsHorizon,
    TooFewSamples,
    InvalidGrid,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library; the code identifies the failure class.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what);

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

}  // namespace levy
