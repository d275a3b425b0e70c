#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace witt {

enum class ErrorCode {
  ZeroElement,
  ZeroArgument,
  FactorizationLimitExceeded,
  EvenOrCompositeModulus,
  UnsupportedField,
  FieldMismatch,
  DegenerateForm,
  NonSymmetricMatrix,
  NonSkewHermitian,
  ZeroSlot,
  DegreeTooLarge,
  AlgebraMismatch,
  NotSplit,
  NotNilpotent,
  NotPureInvertible,
  SearchBoundExceeded,
  GenericBasisUnavailable,
  AsymmetryDetected,
  PfisterRecognitionFailure,
  ClosedFormMismatch,
  RankMismatch,
  LengthMismatch,
  UnsupportedResidueField,
  MissingFactorization,
  NoGoodSpecializationPoint,
  SchemaViolation,
  UnknownSuite,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace witt
