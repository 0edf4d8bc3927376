#pragma once

#include <stdexcept>
#include <string>

namespace seqwalk {

enum class ErrorCode {
  InvalidQuiver,
  RelationBranchTooShort,
  MixedEndpoints,
  PathExplosion,
  EndpointMismatch,
  NotAdmissible,
  NotInIdeal,
  TooManyTerms,
  RelationNotTop,
  NotMonomialAlgebra,
  NotStringAlgebra,
  EmptyPointSet,
  CutNotConsistent,
  SegmentResidueZero,
  NotAString,
  InvalidWalk,
  ZeroModule,
  PreconditionUnmet,
  InternalInconsistency,
  ParseError,
  FieldMismatch,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidQuiver: return "InvalidQuiver";
    case ErrorCode::RelationBranchTooShort: return "RelationBranchTooShort";
    case ErrorCode::MixedEndpoints: return "MixedEndpoints";
    case ErrorCode::PathExplosion: return "PathExplosion";
    case ErrorCode::EndpointMismatch: return "EndpointMismatch";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::NotInIdeal: return "NotInIdeal";
    case ErrorCode::TooManyTerms: return "TooManyTerms";
    case ErrorCode::RelationNotTop: return "RelationNotTop";
    case ErrorCode::NotMonomialAlgebra: return "NotMonomialAlgebra";
    case ErrorCode::NotStringAlgebra: return "NotStringAlgebra";
    case ErrorCode::EmptyPointSet: return "EmptyPointSet";
    case ErrorCode::CutNotConsistent: return "CutNotConsistent";
    case ErrorCode::SegmentResidueZero: return "SegmentResidueZero";
    case ErrorCode::NotAString: return "NotAString";
    case ErrorCode::InvalidWalk: return "InvalidWalk";
    case ErrorCode::ZeroModule: return "ZeroModule";
    case ErrorCode::PreconditionUnmet: return "PreconditionUnmet";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace seqwalk
