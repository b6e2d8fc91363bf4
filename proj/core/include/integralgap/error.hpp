#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace integralgap {

enum class ErrorKind {
  input,             // malformed vectors, dimension mismatch, zero directions
  parameter,         // construction or search parameters out of range
  unsupported,       // valid input that this code path does not handle (e.g. p <= 1)
  search_exhausted,  // a bounded search ran out of candidates
  bound_violation,   // request exceeds a known combinatorial bound
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InputError : public Error {
 public:
  explicit InputError(const std::string& message) : Error(ErrorKind::input, message) {}
};

class ParameterError : public Error {
 public:
  explicit ParameterError(const std::string& message)
      : Error(ErrorKind::parameter, message) {}
};

class UnsupportedError : public Error {
 public:
  explicit UnsupportedError(const std::string& message)
      : Error(ErrorKind::unsupported, message) {}
};

class BoundViolationError : public Error {
 public:
  explicit BoundViolationError(const std::string& message)
      : Error(ErrorKind::bound_violation, message) {}
};

// Carries the best candidate seen so callers can report how close the search got.
class SearchExhaustedError : public Error {
 public:
  SearchExhaustedError(const std::string& message, long long best_k,
                       std::vector<double> best_residuals)
      : Error(ErrorKind::search_exhausted, message),
        best_k_(best_k),
        best_residuals_(std::move(best_residuals)) {}

  long long best_k() const noexcept { return best_k_; }
  const std::vector<double>& best_residuals() const noexcept { return best_residuals_; }

 private:
  long long best_k_;
  std::vector<double> best_residuals_;
};

inline std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::input: return "input";
    case ErrorKind::parameter: return "parameter";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::search_exhausted: return "search_exhausted";
    case ErrorKind::bound_violation: return "bound_violation";
  }
  return "unknown";
}

}  // namespace integralgap
