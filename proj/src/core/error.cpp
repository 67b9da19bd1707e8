#include "fctx/error.hpp"

namespace fctx {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::AllZeroMembership: return "AllZeroMembership";
    case ErrorCode::BothEmpty: return "BothEmpty";
    case ErrorCode::AllRejected: return "AllRejected";
    case ErrorCode::DegenerateWord: return "DegenerateWord";
    case ErrorCode::MissingWordSurvey: return "MissingWordSurvey";
    case ErrorCode::MissingInput: return "MissingInput";
    case ErrorCode::UnknownWord: return "UnknownWord";
    case ErrorCode::NoRuleFired: return "NoRuleFired";
    case ErrorCode::EmptyCodebook: return "EmptyCodebook";
    case ErrorCode::Io: return "IoError";
    case ErrorCode::Format: return "FormatError";
    case ErrorCode::Validation: return "ValidationError";
    case ErrorCode::DegenerateInterval: return "DegenerateInterval";
    case ErrorCode::NonPositiveMax: return "NonPositiveMax";
    case ErrorCode::UnknownMember: return "UnknownMember";
    case ErrorCode::NonMonotoneTimestamp: return "NonMonotoneTimestamp";
    case ErrorCode::Internal: return "InternalError";
  }
  return "UnknownError";
}

}  // namespace fctx
