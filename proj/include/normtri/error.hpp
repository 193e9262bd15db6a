#ifndef NORMTRI_ERROR_HPP
#define NORMTRI_ERROR_HPP

#include <stdexcept>
#include <string>

namespace normtri {

enum class ErrorCode {
  IndexOutOfRange,
  NonInvolutiveGluing,
  FaceGluedToItselfIdentically,
  InvalidEdgeIdentification,
  NotOrientable,
  Inapplicable,
  MalformedSignature,
  MalformedTable,
  InvalidParameter,
  NotCoprime,
  NoSimplicialMatching,
  EdgeNotOnBoundary,
  NotAdmissible,
  InconsistentWeights,
  IncompatibleQuadTypes,
  NoRepresentative,
  LimitExceeded,
  BudgetExhausted,
  InvalidSlope,
  WrongVertexStructure,
  RankTooSmall,
  Overflow,
  FileUnreadable,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NonInvolutiveGluing: return "NonInvolutiveGluing";
    case ErrorCode::FaceGluedToItselfIdentically: return "FaceGluedToItselfIdentically";
    case ErrorCode::InvalidEdgeIdentification: return "InvalidEdgeIdentification";
    case ErrorCode::NotOrientable: return "NotOrientable";
    case ErrorCode::Inapplicable: return "Inapplicable";
    case ErrorCode::MalformedSignature: return "MalformedSignature";
    case ErrorCode::MalformedTable: return "MalformedTable";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::NoSimplicialMatching: return "NoSimplicialMatching";
    case ErrorCode::EdgeNotOnBoundary: return "EdgeNotOnBoundary";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::InconsistentWeights: return "InconsistentWeights";
    case ErrorCode::IncompatibleQuadTypes: return "IncompatibleQuadTypes";
    case ErrorCode::NoRepresentative: return "NoRepresentative";
    case ErrorCode::LimitExceeded: return "LimitExceeded";
    case ErrorCode::BudgetExhausted: return "BudgetExhausted";
    case ErrorCode::InvalidSlope: return "InvalidSlope";
    case ErrorCode::WrongVertexStructure: return "WrongVertexStructure";
    case ErrorCode::RankTooSmall: return "RankTooSmall";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::FileUnreadable: return "FileUnreadable";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace normtri

#endif  // NORMTRI_ERROR_HPP
