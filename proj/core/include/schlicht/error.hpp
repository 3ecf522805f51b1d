#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace schlicht {

enum class ErrorCode {
    InvalidArgument,
    InvalidPair,
    PathHitsBranchPoint,
    AmbiguousContinuation,
    DerivativeSingular,
    OutsideDomain,
    DerivativeVanishesOnBoundary,
    BranchPointCollision,
    CapExceeded,
    DegeneratePair,
    NotOmitted,
    NonPositiveCoefficient,
    PoleAtMidpoint,
    SingularityApproach,
    HorizonExceeded,
    RootSelectionAmbiguous,
    TailBoundLoose,
    DegenerateCurve,
    InconclusiveOnBoundary,
    ConstantFunctional,
    NoFeasibleStart,
    NotAZero,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it to a distinct exit status and report field.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace schlicht
