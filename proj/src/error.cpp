#include "nfx/error.hpp"

namespace nfx {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::MissingColumn: return "MissingColumn";
    case ErrorCode::DuplicateDate: return "DuplicateDate";
    case ErrorCode::NonContiguousDates: return "NonContiguousDates";
    case ErrorCode::EmptyWindow: return "EmptyWindow";
    case ErrorCode::UnsortedInput: return "UnsortedInput";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NegativeBalance: return "NegativeBalance";
    case ErrorCode::SeriesTooShort: return "SeriesTooShort";
    case ErrorCode::UnknownColumn: return "UnknownColumn";
    case ErrorCode::NoClassifiedDays: return "NoClassifiedDays";
    case ErrorCode::MismatchedPair: return "MismatchedPair";
    case ErrorCode::DegenerateSeries: return "DegenerateSeries";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

bool is_input_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::FileNotFound:
    case ErrorCode::InvalidConfig:
    case ErrorCode::MalformedRow:
    case ErrorCode::MissingColumn:
    case ErrorCode::DuplicateDate:
    case ErrorCode::NonContiguousDates:
    case ErrorCode::EmptyWindow:
    case ErrorCode::UnsortedInput:
    case ErrorCode::InvalidArgument:
    case ErrorCode::InvalidSpec:
      return true;
    default:
      return false;
  }
}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace nfx
