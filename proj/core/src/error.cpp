#include "schlicht/error.hpp"

namespace schlicht {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidPair: return "InvalidPair";
    case ErrorCode::PathHitsBranchPoint: return "PathHitsBranchPoint";
    case ErrorCode::AmbiguousContinuation: return "AmbiguousContinuation";
    case ErrorCode::DerivativeSingular: return "DerivativeSingular";
    case ErrorCode::OutsideDomain: return "OutsideDomain";
    case ErrorCode::DerivativeVanishesOnBoundary: return "DerivativeVanishesOnBoundary";
    case ErrorCode::BranchPointCollision: return "BranchPointCollision";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::DegeneratePair: return "DegeneratePair";
    case ErrorCode::NotOmitted: return "NotOmitted";
    case ErrorCode::NonPositiveCoefficient: return "NonPositiveCoefficient";
    case ErrorCode::PoleAtMidpoint: return "PoleAtMidpoint";
    case ErrorCode::SingularityApproach: return "SingularityApproach";
    case ErrorCode::HorizonExceeded: return "HorizonExceeded";
    case ErrorCode::RootSelectionAmbiguous: return "RootSelectionAmbiguous";
    case ErrorCode::TailBoundLoose: return "TailBoundLoose";
    case ErrorCode::DegenerateCurve: return "DegenerateCurve";
    case ErrorCode::InconclusiveOnBoundary: return "InconclusiveOnBoundary";
    case ErrorCode::ConstantFunctional: return "ConstantFunctional";
    case ErrorCode::NoFeasibleStart: return "NoFeasibleStart";
    case ErrorCode::NotAZero: return "NotAZero";
    }
    return "Unknown";
}

}  // namespace schlicht
