#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cubeterm {

/// One broken invariant of an algebra description, with its location.
struct Violation {
    std::string kind;      // "arity", "table-length", "entry-out-of-range", ...
    std::string location;  // e.g. "operations[1]" or "operations[0].table[5]"
    std::string message;

    bool operator==(const Violation &) const = default;
};

class InvalidAlgebra : public std::runtime_error {
  public:
    explicit InvalidAlgebra(std::vector<Violation> violations);

    const std::vector<Violation> &violations() const noexcept { return violations_; }

  private:
    std::vector<Violation> violations_;
};

/// Raised by procedures whose preconditions require an idempotent algebra.
class NotIdempotent : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A computation hit its size, memory or time cap before producing an answer.
class BudgetExceeded : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace cubeterm
