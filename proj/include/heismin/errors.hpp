#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace heismin {

enum class ErrorKind {
  SingularPoint,
  BlowUp,
  DegenerateBranch,
  DegenerateChart,
  MixedType,
  QuadratureFailure,
  BadRotation,
  PreconditionFailed,
  NewtonDivergence,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

/// Numerical failure raised by the geometry modules. The kind is what
/// callers branch on; the message is for humans.
class NumericError : public std::runtime_error {
 public:
  NumericError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Expression parse failure with the byte offset of the offending token.
class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(std::size_t offset, std::string expected)
      : std::runtime_error("syntax error at offset " + std::to_string(offset) +
                           ": expected " + expected),
        offset_(offset),
        expected_(std::move(expected)) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::string expected_;
};

}  // namespace heismin
