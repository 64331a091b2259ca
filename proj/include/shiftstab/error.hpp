#pragma once

#include <stdexcept>
#include <string>

namespace shiftstab {

enum class ErrorCode {
  invalid_argument,
  resource_limit,
  unsupported_generator,
  unsupported_request,
  unsupported_set,
  config,
};

/// Exception carrying a machine-readable category; the CLI maps categories to exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

const char* to_string(ErrorCode code) noexcept;

}  // namespace shiftstab
