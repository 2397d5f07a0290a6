#pragma once

#include <stdexcept>
#include <string>

namespace superburst {

enum class ErrorCode {
  invalid_argument,
  parse,
  incompatible,
  out_of_range,
  unsupported,
  numeric,
  no_root,
  io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace superburst
