#include "catqed/state.hpp"

#include <cmath>

namespace catqed {

char level_char(Level l) { return static_cast<char>(l); }

Level level_from_char(char c) {
    switch (c) {
        case 'g': return Level::g;
        case 'e': return Level::e;
        case 'f': return Level::f;
        default: throw std::invalid_argument(std::string("unknown atomic level '") + c + "'");
    }
}

bool labels_equal(cx a, cx b) { return std::abs(a - b) <= kLabelTol; }

cx coherent_overlap(cx alpha, cx beta) {
    if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()) ||
        !std::isfinite(beta.real()) || !std::isfinite(beta.imag())) {
        throw std::domain_error("coherent_overlap: non-finite amplitude");
    }
    return std::exp(-0.5 * std::norm(alpha) - 0.5 * std::norm(beta) + std::conj(alpha) * beta);
}

static bool terms_label_equal(const BasisTerm& a, const BasisTerm& b) {
    if (a.atoms != b.atoms || a.fields.size() != b.fields.size()) return false;
    for (size_t m = 0; m < a.fields.size(); ++m) {
        if (!labels_equal(a.fields[m], b.fields[m])) return false;
    }
    return true;
}

cx inner_product(const SuperState& a, const SuperState& b) {
    if (a.num_atoms() != b.num_atoms() || a.num_modes() != b.num_modes()) {
        throw ShapeError("inner_product: atom-register or mode arity mismatch");
    }
    cx acc = 0.0;
    for (const BasisTerm& ta : a.terms) {
        for (const BasisTerm& tb : b.terms) {
            if (ta.atoms != tb.atoms) continue;
            cx factor = std::conj(ta.coeff) * tb.coeff;
            for (size_t m = 0; m < ta.fields.size(); ++m) {
                factor *= coherent_overlap(ta.fields[m], tb.fields[m]);
            }
            acc += factor;
        }
    }
    return acc;
}

double norm_squared(const SuperState& s) { return inner_product(s, s).real(); }

SuperState merge_terms(const SuperState& s) {
    SuperState out;
    out.is_normalized = s.is_normalized;
    for (const BasisTerm& t : s.terms) {
        bool merged = false;
        for (BasisTerm& kept : out.terms) {
            if (terms_label_equal(kept, t)) {
                kept.coeff += t.coeff;
                merged = true;
                break;
            }
        }
        if (!merged) out.terms.push_back(t);
    }
    std::erase_if(out.terms, [](const BasisTerm& t) { return std::abs(t.coeff) <= kCoeffCull; });
    return out;
}

SuperState normalize(const SuperState& s) {
    SuperState merged = merge_terms(s);
    double n2 = norm_squared(merged);
    if (n2 <= kNullNorm2) throw DegenerateStateError("normalize: numerically null state", n2);
    double inv = 1.0 / std::sqrt(n2);
    for (BasisTerm& t : merged.terms) t.coeff *= inv;
    merged.is_normalized = true;
    return merged;
}

SuperState scaled(const SuperState& s, cx factor) {
    SuperState out = s;
    out.is_normalized = false;
    for (BasisTerm& t : out.terms) t.coeff *= factor;
    return out;
}

SuperState sum(const SuperState& a, const SuperState& b) {
    if (!a.terms.empty() && !b.terms.empty() &&
        (a.num_atoms() != b.num_atoms() || a.num_modes() != b.num_modes())) {
        throw ShapeError("sum: atom-register or mode arity mismatch");
    }
    SuperState out = a;
    out.is_normalized = false;
    out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
    return merge_terms(out);
}

SuperState tensor_fields(const SuperState& a, const SuperState& b) {
    SuperState out;
    for (const BasisTerm& ta : a.terms) {
        if (!ta.atoms.empty()) throw ShapeError("tensor_fields: field-only states expected");
        for (const BasisTerm& tb : b.terms) {
            if (!tb.atoms.empty()) throw ShapeError("tensor_fields: field-only states expected");
            BasisTerm t;
            t.coeff = ta.coeff * tb.coeff;
            t.fields = ta.fields;
            t.fields.insert(t.fields.end(), tb.fields.begin(), tb.fields.end());
            out.terms.push_back(std::move(t));
        }
    }
    return merge_terms(out);
}

SuperState field_term(cx coeff, std::vector<cx> labels) {
    SuperState s;
    s.terms.push_back(BasisTerm{coeff, {}, std::move(labels)});
    return s;
}

SuperState atom_field_term(cx coeff, std::vector<Level> atoms, std::vector<cx> labels) {
    SuperState s;
    s.terms.push_back(BasisTerm{coeff, std::move(atoms), std::move(labels)});
    return s;
}

std::string atom_label_string(Level level, int atom_index) {
    return std::string(1, level_char(level)) + std::to_string(atom_index);
}

}  // namespace catqed
