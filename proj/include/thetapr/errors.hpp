#pragma once

#include <stdexcept>
#include <string>

namespace thetapr {

// Input violates a documented precondition (bad dimensions, non-finite
// entries, malformed JSON, ...). The CLI maps this to exit code 2.
struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Input is structurally fine but degenerate for the requested operation
// (repeated cross-ratio points, singular map inversion, ...). Exit code 2.
struct DegenerateInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// The request exceeds an enumeration or budget guard. Exit code 3.
struct ResourceLimit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The combinatorial problem has no solution for this input (e.g. a phase
// vector whose top multiplicity rules out a pairing). Exit code 2.
struct InfeasibleInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace thetapr
