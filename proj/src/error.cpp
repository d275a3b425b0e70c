#include "witt/error.hpp"

namespace witt {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroElement: return "ZeroElement";
    case ErrorCode::ZeroArgument: return "ZeroArgument";
    case ErrorCode::FactorizationLimitExceeded: return "FactorizationLimitExceeded";
    case ErrorCode::EvenOrCompositeModulus: return "EvenOrCompositeModulus";
    case ErrorCode::UnsupportedField: return "UnsupportedField";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::DegenerateForm: return "DegenerateForm";
    case ErrorCode::NonSymmetricMatrix: return "NonSymmetricMatrix";
    case ErrorCode::NonSkewHermitian: return "NonSkewHermitian";
    case ErrorCode::ZeroSlot: return "ZeroSlot";
    case ErrorCode::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorCode::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorCode::NotSplit: return "NotSplit";
    case ErrorCode::NotNilpotent: return "NotNilpotent";
    case ErrorCode::NotPureInvertible: return "NotPureInvertible";
    case ErrorCode::SearchBoundExceeded: return "SearchBoundExceeded";
    case ErrorCode::GenericBasisUnavailable: return "GenericBasisUnavailable";
    case ErrorCode::AsymmetryDetected: return "AsymmetryDetected";
    case ErrorCode::PfisterRecognitionFailure: return "PfisterRecognitionFailure";
    case ErrorCode::ClosedFormMismatch: return "ClosedFormMismatch";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::UnsupportedResidueField: return "UnsupportedResidueField";
    case ErrorCode::MissingFactorization: return "MissingFactorization";
    case ErrorCode::NoGoodSpecializationPoint: return "NoGoodSpecializationPoint";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::UnknownSuite: return "UnknownSuite";
  }
  return "Unknown";
}

}  // namespace witt
