#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace normtorus {

enum class ErrorKind {
  containment,
  rank,
  not_a_group,
  closure_too_large,
  not_cyclic,
  not_prime_power,
  empty_factors,
  precondition,
  budget_exceeded,
  malformed_invariant,
  missing_entry,
  input,
  internal,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::containment: return "ContainmentError";
    case ErrorKind::rank: return "RankError";
    case ErrorKind::not_a_group: return "NotAGroup";
    case ErrorKind::closure_too_large: return "ClosureTooLarge";
    case ErrorKind::not_cyclic: return "NotCyclic";
    case ErrorKind::not_prime_power: return "NotPrimePower";
    case ErrorKind::empty_factors: return "EmptyFactors";
    case ErrorKind::precondition: return "PreconditionViolated";
    case ErrorKind::budget_exceeded: return "BudgetExceeded";
    case ErrorKind::malformed_invariant: return "MalformedInvariant";
    case ErrorKind::missing_entry: return "MissingEntry";
    case ErrorKind::input: return "InputError";
    case ErrorKind::internal: return "InternalError";
  }
  return "Error";
}

/// Every failure raised by the library. `module()` names the component
/// that detected the problem so the CLI can report provenance.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string module, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + " [" + module + "]: " + message),
        kind_(kind),
        module_(std::move(module)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& module() const noexcept { return module_; }

 private:
  ErrorKind kind_;
  std::string module_;
};

namespace detail {

inline void ensure(bool condition, std::string_view module, const std::string& what) {
  if (!condition) throw Error(ErrorKind::internal, std::string(module), what);
}

}  // namespace detail

}  // namespace normtorus
