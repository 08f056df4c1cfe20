#pragma once

#include <stdexcept>
#include <string>

namespace tvb {

/// Error classes surfaced by the library. The numeric values are the CLI exit
/// codes and are part of the command-line contract.
enum class ErrorCategory : int {
  Parse = 2,
  Axiom = 3,
  Precondition = 4,
  Invariant = 5,
};

inline const char* category_name(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::Parse: return "parse";
    case ErrorCategory::Axiom: return "axiom";
    case ErrorCategory::Precondition: return "precondition";
    case ErrorCategory::Invariant: return "invariant";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }
  int exit_code() const noexcept { return static_cast<int>(category_); }

 private:
  ErrorCategory category_;
};

}  // namespace tvb
