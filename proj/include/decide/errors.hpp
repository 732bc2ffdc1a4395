#pragma once

#include <stdexcept>
#include <string>

namespace decide {

// Malformed or out-of-range input to any operation.
class InputError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// A criterion's precondition does not hold for the instance (e.g. the
// closed-form MMR solution asked for on an unambiguous region).
class PreconditionError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

// The prior assigns zero mass to the region being conditioned on.
class DegeneratePosteriorError : public PreconditionError {
  public:
    using PreconditionError::PreconditionError;
};

class UnsupportedOperationError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

// The LP substrate failed on a problem that should always be solvable.
class SolverError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace decide
