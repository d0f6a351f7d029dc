#include "catqed/protocol.hpp"

#include <cmath>
#include <numbers>

namespace catqed {

namespace {

constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;

void require_atom(const SuperState& s, int atom_index) {
    if (atom_index < 1 || atom_index > s.num_atoms()) {
        throw ProtocolSequenceError("atom " + std::to_string(atom_index) +
                                    " is not present in the state");
    }
}

}  // namespace

MeasurementOutcome::MeasurementOutcome(Level a1, Level a2, Level a3) : a1(a1), a2(a2), a3(a3) {
    if ((a1 != Level::g && a1 != Level::f) || a2 == Level::f || a3 == Level::f) {
        throw std::invalid_argument("outcome must have atom 1 in {g,f}, atoms 2,3 in {g,e}");
    }
}

std::string MeasurementOutcome::label() const {
    return atom_label_string(a1, 1) + atom_label_string(a2, 2) + atom_label_string(a3, 3);
}

MeasurementOutcome MeasurementOutcome::from_label(const std::string& label) {
    if (label.size() != 6 || label[1] != '1' || label[3] != '2' || label[5] != '3') {
        throw std::invalid_argument("outcome label must look like \"g1e2g3\", got \"" + label + "\"");
    }
    return MeasurementOutcome(level_from_char(label[0]), level_from_char(label[2]),
                              level_from_char(label[4]));
}

const std::array<MeasurementOutcome, 8>& MeasurementOutcome::all() {
    static const std::array<MeasurementOutcome, 8> outcomes = {
        MeasurementOutcome(Level::g, Level::g, Level::g),
        MeasurementOutcome(Level::g, Level::e, Level::g),
        MeasurementOutcome(Level::f, Level::g, Level::g),
        MeasurementOutcome(Level::f, Level::e, Level::g),
        MeasurementOutcome(Level::g, Level::g, Level::e),
        MeasurementOutcome(Level::g, Level::e, Level::e),
        MeasurementOutcome(Level::f, Level::g, Level::e),
        MeasurementOutcome(Level::f, Level::e, Level::e),
    };
    return outcomes;
}

SuperState apply_pi2(const SuperState& s, const PulseSpec& pulse) {
    if (pulse.kind != PulseKind::half_pi) throw std::invalid_argument("apply_pi2: wrong pulse kind");
    require_atom(s, pulse.atom_index);
    const int idx = pulse.atom_index - 1;
    const cx up = std::polar(1.0, pulse.phase);
    SuperState out;
    out.terms.reserve(2 * s.terms.size());
    for (const BasisTerm& t : s.terms) {
        Level lvl = t.atoms[idx];
        if (lvl == Level::g) {
            BasisTerm a = t, b = t;
            a.coeff *= kInvSqrt2;
            b.coeff *= kInvSqrt2 * up;
            b.atoms[idx] = pulse.upper;
            out.terms.push_back(std::move(a));
            out.terms.push_back(std::move(b));
        } else if (lvl == pulse.upper) {
            BasisTerm a = t, b = t;
            a.coeff *= kInvSqrt2 * std::conj(up);
            a.atoms[idx] = Level::g;
            b.coeff *= -kInvSqrt2;
            out.terms.push_back(std::move(a));
            out.terms.push_back(std::move(b));
        } else {
            out.terms.push_back(t);  // level outside the driven pair
        }
    }
    out.is_normalized = s.is_normalized;
    return merge_terms(out);
}

SuperState apply_pi(const SuperState& s, const PulseSpec& pulse) {
    if (pulse.kind != PulseKind::pi) throw std::invalid_argument("apply_pi: wrong pulse kind");
    require_atom(s, pulse.atom_index);
    const int idx = pulse.atom_index - 1;
    const cx up = std::polar(1.0, pulse.phase);
    SuperState out = s;
    for (BasisTerm& t : out.terms) {
        Level lvl = t.atoms[idx];
        if (lvl == Level::g) {
            t.coeff *= up;
            t.atoms[idx] = pulse.upper;
        } else if (lvl == pulse.upper) {
            t.coeff *= -std::conj(up);
            t.atoms[idx] = Level::g;
        }
    }
    return merge_terms(out);
}

SuperState apply_dispersive(const SuperState& s, int atom_index, int mode_index, double theta) {
    if (!std::isfinite(theta)) throw std::domain_error("apply_dispersive: non-finite theta");
    require_atom(s, atom_index);
    if (mode_index < 1 || mode_index > s.num_modes()) {
        throw ProtocolSequenceError("mode " + std::to_string(mode_index) + " is not present");
    }
    const int a = atom_index - 1;
    const int m = mode_index - 1;
    const cx rot_g = std::polar(1.0, theta);
    const cx rot_e = std::polar(1.0, -theta);
    SuperState out = s;
    for (BasisTerm& t : out.terms) {
        switch (t.atoms[a]) {
            case Level::g:
                t.fields[m] *= rot_g;
                break;
            case Level::e:
                t.fields[m] *= rot_e;
                t.coeff *= rot_e;
                break;
            case Level::f:
                break;
        }
    }
    return merge_terms(out);
}

SuperState run_protocol(const ProtocolConfig& cfg) {
    SuperState s = atom_field_term(1.0, {Level::g, Level::g, Level::g}, {cfg.alpha1, cfg.alpha2});
    const double d = cfg.delta;

    // Atom 1 (g,f pair): R1, C1, R2, C2, R3.
    s = apply_pi2(s, {PulseKind::half_pi, 1, Level::f, d});
    s = apply_dispersive(s, 1, 1, cfg.theta1);
    s = apply_pi(s, {PulseKind::pi, 1, Level::f, d});
    s = apply_dispersive(s, 1, 2, cfg.theta2);
    s = apply_pi2(s, {PulseKind::half_pi, 1, Level::f, d});

    // Atom 2 (g,e pair): R4, C1, R5; cavity 2 is off.
    s = apply_pi2(s, {PulseKind::half_pi, 2, Level::e, d});
    s = apply_dispersive(s, 2, 1, cfg.theta1);
    s = apply_pi2(s, {PulseKind::half_pi, 2, Level::e, d});

    // Atom 3 (g,e pair): R6, C2, R7; cavity 1 is off.
    s = apply_pi2(s, {PulseKind::half_pi, 3, Level::e, d});
    s = apply_dispersive(s, 3, 2, cfg.theta2);
    s = apply_pi2(s, {PulseKind::half_pi, 3, Level::e, d});

    s.is_normalized = true;  // pulses and dispersive maps are unitary
    return s;
}

ConditionalResult project_atoms(const SuperState& s, const MeasurementOutcome& outcome) {
    if (s.num_atoms() != 3) throw ShapeError("project_atoms: state must carry all three atoms");
    const std::vector<Level> want = {outcome.a1, outcome.a2, outcome.a3};
    SuperState projected;
    for (const BasisTerm& t : s.terms) {
        if (t.atoms != want) continue;
        projected.terms.push_back(BasisTerm{t.coeff, {}, t.fields});
    }
    projected = merge_terms(projected);
    const double prob = projected.terms.empty() ? 0.0 : norm_squared(projected);
    if (prob <= kNullNorm2) {
        throw DegenerateStateError("project_atoms: outcome " + outcome.label() +
                                       " has zero probability",
                                   prob);
    }
    return ConditionalResult{normalize(projected), prob};
}

SuperState reference_state(const MeasurementOutcome& outcome, const ProtocolConfig& cfg) {
    const cx r1 = std::polar(1.0, cfg.theta1);
    const cx r2 = std::polar(1.0, cfg.theta2);
    const double s1 = (outcome.a2 == Level::g) ? 1.0 : -1.0;
    const double s2 = (outcome.a3 == Level::g) ? 1.0 : -1.0;
    const double block = (outcome.a1 == Level::g) ? -1.0 : 1.0;

    // Mode-1 brackets: |a1 e^{2i t1}> + s e^{-i t1}|a1>  and
    //                  |a1 e^{i t1}>  + s e^{-i t1}|a1 e^{-i t1}>.
    auto bracket = [](cx amp, cx rot, double sign) {
        SuperState first = field_term(1.0, {amp * rot * rot});
        SuperState second = field_term(sign * std::conj(rot), {amp});
        return sum(first, second);
    };
    auto bracket_mid = [](cx amp, cx rot, double sign) {
        SuperState first = field_term(1.0, {amp * rot});
        SuperState second = field_term(sign * std::conj(rot), {amp * std::conj(rot)});
        return sum(first, second);
    };

    SuperState p1 = bracket(cfg.alpha1, r1, s1);
    SuperState q1 = bracket_mid(cfg.alpha1, r1, s1);
    SuperState q2 = bracket_mid(cfg.alpha2, r2, s2);
    SuperState p2 = bracket(cfg.alpha2, r2, s2);

    SuperState state = sum(tensor_fields(p1, q2), scaled(tensor_fields(q1, p2), block));

    int k = (outcome.a1 == Level::f) + (outcome.a2 == Level::e) + (outcome.a3 == Level::e);
    cx pref = (outcome.a1 == Level::g ? 1.0 : -1.0) * std::polar(1.0, k * cfg.delta);
    return normalize(scaled(state, pref));
}

}  // namespace catqed
