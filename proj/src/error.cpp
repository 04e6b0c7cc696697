#include "subcrit/error.hpp"

namespace subcrit {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UnknownClass: return "UnknownClass";
    case ErrorCode::CompositionAtNonzeroConstant: return "CompositionAtNonzeroConstant";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::MissingWeights: return "MissingWeights";
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorCode::SamplerRunaway: return "SamplerRunaway";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::NoBracket: return "NoBracket";
    case ErrorCode::OrderTooSmall: return "OrderTooSmall";
    case ErrorCode::InfeasibleSize: return "InfeasibleSize";
    case ErrorCode::DomainTooSmall: return "DomainTooSmall";
    case ErrorCode::EmptySample: return "EmptySample";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace subcrit
