#pragma once

#include <stdexcept>
#include <string>

namespace uce {

enum class ErrorCode {
  SyntaxError = 1,
  ValidationError,
  DomainNotSupported,
  RelationsNotContained,
  ChainInconsistency,
  NotPerfect,
  RankTooSmall,
  CocycleInvalid,
  VariantNotSupported,
  InvalidArgument,
  Unsupported,
  Io,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace uce
