#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace polykernel {

enum class ErrorCode {
  EmptyInput,
  DegenerateFace,
  DegenerateCap,
  NotClosed,
  InputMismatch,
  NoProperIntersection,
  ParallelLine,
  TooManyPlanes,
  ParseError,
  IndexOutOfRange,
  IoError,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library; callers dispatch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by the text readers. line() is 1-based; 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t line, const std::string& what)
      : Error(code, "line " + std::to_string(line) + ": " + what), line_(line), detail_(what) {}

  std::size_t line() const noexcept { return line_; }
  /// Message without the line prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t line_;
  std::string detail_;
};

}  // namespace polykernel
