#pragma once

#include <stdexcept>
#include <string>

namespace hgf {

// Violated operation precondition (bad input, capacity, non-orthonormal window).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Requested lattice/grid work exceeds the configured point budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Eigensolver or refinement failed to reach the required accuracy.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw PreconditionError(what);
}

}  // namespace hgf
