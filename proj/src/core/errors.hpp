#pragma once
#include <stdexcept>
#include <string>

namespace ovalbowl {

enum class ErrorKind {
  invalid_argument,
  integration_accuracy,
  nonconvergence,
  range,
  extraction,
  inversion,
  shift_range,
  consistency,
  io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace ovalbowl
