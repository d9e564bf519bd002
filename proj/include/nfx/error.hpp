#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nfx {

enum class ErrorCode {
  // input errors
  FileNotFound,
  InvalidConfig,
  MalformedRow,
  MissingColumn,
  DuplicateDate,
  NonContiguousDates,
  EmptyWindow,
  UnsortedInput,
  InvalidArgument,
  // computation errors
  NegativeBalance,
  SeriesTooShort,
  UnknownColumn,
  NoClassifiedDays,
  MismatchedPair,
  DegenerateSeries,
  InsufficientData,
  InvalidSpec,
  EmptyInput,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// True for errors caused by bad user input (config, files, arguments)
/// rather than by the data failing a computation.
bool is_input_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace nfx
