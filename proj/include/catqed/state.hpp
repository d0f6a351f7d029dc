#ifndef CATQED_STATE_HPP
#define CATQED_STATE_HPP

#include <complex>
#include <string>
#include <vector>

#include "catqed/errors.hpp"

namespace catqed {

using cx = std::complex<double>;

// Tolerances shared across the library.
inline constexpr double kLabelTol = 1e-12;    // coherent labels closer than this merge
inline constexpr double kCoeffCull = 1e-14;   // merged terms below this are dropped
inline constexpr double kNullNorm2 = 1e-28;   // squared norm below this counts as null
inline constexpr double kCollinearQ = 1e-9;   // q at or below this flags a collinear pair

enum class Level : char { g = 'g', e = 'e', f = 'f' };

char level_char(Level l);
Level level_from_char(char c);

// One tensor-product term: coefficient * |atoms...> * |field labels...>.
// atoms[i] is the level of atom i+1; fields[m] is the coherent amplitude of
// cavity mode m+1. Field-only states have an empty atoms vector.
struct BasisTerm {
    cx coeff;
    std::vector<Level> atoms;
    std::vector<cx> fields;
};

// Finite superposition of multimode coherent states with atomic registers.
// Values are immutable by convention: every operation returns a fresh state.
struct SuperState {
    std::vector<BasisTerm> terms;
    bool is_normalized = false;

    int num_atoms() const { return terms.empty() ? 0 : static_cast<int>(terms.front().atoms.size()); }
    int num_modes() const { return terms.empty() ? 0 : static_cast<int>(terms.front().fields.size()); }
};

bool labels_equal(cx a, cx b);

// <alpha|beta> = exp(-|alpha|^2/2 - |beta|^2/2 + conj(alpha)*beta).
cx coherent_overlap(cx alpha, cx beta);

// Sesquilinear inner product <a|b>; atomic labels are orthonormal and the
// field factor is a product of coherent overlaps.
cx inner_product(const SuperState& a, const SuperState& b);

double norm_squared(const SuperState& s);

// Sums coefficients of label-equal terms and drops terms below kCoeffCull.
SuperState merge_terms(const SuperState& s);

// Rescales to unit norm by a positive real factor (global phase untouched).
// Throws DegenerateStateError when the squared norm is below kNullNorm2.
SuperState normalize(const SuperState& s);

SuperState scaled(const SuperState& s, cx factor);
SuperState sum(const SuperState& a, const SuperState& b);

// Tensor product of two field-only states (modes of `a` first).
SuperState tensor_fields(const SuperState& a, const SuperState& b);

// Single-term constructors.
SuperState field_term(cx coeff, std::vector<cx> labels);
SuperState atom_field_term(cx coeff, std::vector<Level> atoms, std::vector<cx> labels);

std::string atom_label_string(Level level, int atom_index);  // e.g. "g1"

}  // namespace catqed

#endif
