#include "negtype/error.hpp"

namespace negtype {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::NotSquare: return "NotSquare";
    case Errc::LabelCountMismatch: return "LabelCountMismatch";
    case Errc::NonFiniteEntry: return "NonFiniteEntry";
    case Errc::AsymmetricEntry: return "AsymmetricEntry";
    case Errc::NonzeroDiagonal: return "NonzeroDiagonal";
    case Errc::NonpositiveDistance: return "NonpositiveDistance";
    case Errc::TriangleViolation: return "TriangleViolation";
    case Errc::NegativeExponent: return "NegativeExponent";
    case Errc::DisconnectedGraph: return "DisconnectedGraph";
    case Errc::NonpositiveWeight: return "NonpositiveWeight";
    case Errc::DuplicatePoint: return "DuplicatePoint";
    case Errc::InvalidNormOrder: return "InvalidNormOrder";
    case Errc::DimensionTooSmall: return "DimensionTooSmall";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::NotBalanced: return "NotBalanced";
    case Errc::EigenFailure: return "EigenFailure";
    case Errc::InvalidCap: return "InvalidCap";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::UnbalancedWeights: return "UnbalancedWeights";
    case Errc::ZeroVector: return "ZeroVector";
    case Errc::NotApplicable: return "NotApplicable";
    case Errc::NoRootInUnitInterval: return "NoRootInUnitInterval";
    case Errc::NoWitnessFound: return "NoWitnessFound";
    case Errc::ParseError: return "ParseError";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace negtype
