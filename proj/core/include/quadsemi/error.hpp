#ifndef QUADSEMI_ERROR_HPP
#define QUADSEMI_ERROR_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace quadsemi {

/// A precondition of an operation was violated by the caller.
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An enumeration or expansion would exceed its configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The registry data file could not be read or failed validation.
class RegistryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation contradicted a statement the library relies on as a theorem.
/// `report` carries a human-readable structured description of the evidence.
class TheoremViolation : public std::runtime_error {
 public:
  TheoremViolation(std::string statement, std::string report)
      : std::runtime_error("theorem violation: " + statement + "\n" + report),
        statement_(std::move(statement)),
        report_(std::move(report)) {}

  const std::string& statement() const noexcept { return statement_; }
  const std::string& report() const noexcept { return report_; }

 private:
  std::string statement_;
  std::string report_;
};

}  // namespace quadsemi

#endif  // QUADSEMI_ERROR_HPP
