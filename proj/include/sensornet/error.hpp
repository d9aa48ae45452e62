#pragma once

#include <stdexcept>
#include <string>

namespace sensornet {

enum class ErrorKind {
  shape,         // dimension mismatch between patterns
  validation,    // malformed or inconsistent input document
  infeasible,    // no solution exists under the given constraints
  guard,         // brute-force size guard exceeded
  precondition,  // input outside the scope an operation is defined for
  constraint,    // a design violates a hard constraint (e.g. arc outside the candidate network)
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Process exit code for an error kind: 2 infeasible, 3 guard exceeded, 1 otherwise.
int exit_code(ErrorKind kind);

}  // namespace sensornet
