#ifndef CATQED_ERRORS_HPP
#define CATQED_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace catqed {

// Two states were combined whose atom registers or mode counts disagree.
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Normalization or projection hit a numerically null state. Carries the
// squared norm (= outcome probability for projections) that was found.
struct DegenerateStateError : std::runtime_error {
    DegenerateStateError(const std::string& what, double norm2)
        : std::runtime_error(what), norm2(norm2) {}
    double norm2;
};

// A pulse or cavity interaction addressed an atom that is not in the state.
struct ProtocolSequenceError : std::logic_error {
    using std::logic_error::logic_error;
};

// The state is not a sum of two product blocks; callers fall back to the
// Gram-matrix entropy path.
struct StructureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A number-basis truncation left more tail mass than the policy allows.
struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A Wigner sum produced an imaginary residue beyond rounding noise,
// indicating corrupted pair coefficients upstream.
struct HermiticityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace catqed

#endif
