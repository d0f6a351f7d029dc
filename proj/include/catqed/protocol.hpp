#ifndef CATQED_PROTOCOL_HPP
#define CATQED_PROTOCOL_HPP

#include <array>

#include "catqed/state.hpp"

// The two-cavity circuit: three atoms traverse Ramsey zones R1..R7 and the
// cavities C1, C2 under dispersive coupling. Conditional measurement of the
// atoms in the {g,e,f} basis leaves the cavities in one of eight entangled
// two-mode cat states.

namespace catqed {

struct ProtocolConfig {
    cx alpha1;       // initial coherent amplitude, cavity 1
    cx alpha2;       // cavity 2
    double theta1;   // chi1 * t, radians
    double theta2;   // chi2 * t, radians
    double delta;    // shared Ramsey phase
};

enum class PulseKind { half_pi, pi };

// A Ramsey pulse on the (g, upper) pair of one atom. Atom 1 pulses use
// (g, f); atoms 2 and 3 use (g, e).
struct PulseSpec {
    PulseKind kind;
    int atom_index;  // 1-based
    Level upper;     // Level::f or Level::e
    double phase;    // delta
};

// One of the eight joint detection results: atom 1 in {g,f}, atoms 2,3 in {g,e}.
struct MeasurementOutcome {
    Level a1, a2, a3;

    MeasurementOutcome(Level a1, Level a2, Level a3);
    std::string label() const;  // "g1g2g3" ... "f1e2e3"
    static MeasurementOutcome from_label(const std::string& label);
    static const std::array<MeasurementOutcome, 8>& all();
    bool operator==(const MeasurementOutcome&) const = default;
};

struct ConditionalResult {
    SuperState state;    // normalized, field-only
    double probability;  // squared norm of the projected component
};

// pi/2 pulse: |g> -> (|g> + e^{i d}|x>)/sqrt2, |x> -> (e^{-i d}|g> - |x>)/sqrt2.
SuperState apply_pi2(const SuperState& s, const PulseSpec& pulse);

// pi pulse: |g> -> e^{i d}|x>, |x> -> -e^{-i d}|g>.
SuperState apply_pi(const SuperState& s, const PulseSpec& pulse);

// Dispersive interaction of one atom with one mode for angle theta:
// g rotates the mode label by e^{+i theta}; e rotates it by e^{-i theta} and
// multiplies the coefficient by e^{-i theta}; f is untouched.
SuperState apply_dispersive(const SuperState& s, int atom_index, int mode_index, double theta);

// Full circuit on |g1 g2 g3>|alpha1>|alpha2>: atom 1 through R1, C1, R2, C2,
// R3; atom 2 through R4, C1, R5; atom 3 through R6, C2, R7. Returns the
// merged, normalized 64-term state.
SuperState run_protocol(const ProtocolConfig& cfg);

// Projects the atoms onto the outcome and renormalizes the field part.
// Throws DegenerateStateError (carrying the probability) for outcomes of
// numerically zero weight.
ConditionalResult project_atoms(const SuperState& s, const MeasurementOutcome& outcome);

// Conditional state built directly from its printed product-of-brackets
// expression; an independent code path against run_protocol + project_atoms.
SuperState reference_state(const MeasurementOutcome& outcome, const ProtocolConfig& cfg);

}  // namespace catqed

#endif
