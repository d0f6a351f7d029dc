#ifndef CATQED_FOCK_HPP
#define CATQED_FOCK_HPP

#include <Eigen/Dense>

#include "catqed/state.hpp"

// Brute-force validation backend: truncated number-basis representations,
// partial traces, diagonal dispersive phases and displaced-parity Wigner
// evaluation. Everything here is deliberately independent of the coherent
// label algebra so the two can cross-check each other.

namespace catqed::fock {

using FockVector = Eigen::VectorXcd;
using FockDensity = Eigen::MatrixXcd;

struct TruncationPolicy {
    int n_max;

    // n_max = ceil(A^2 + 8A + 10) keeps the Poisson tail below 1e-12 for
    // every |alpha| <= A. The backend is not meant to run above A = 4.
    static TruncationPolicy for_amplitude(double max_abs_alpha);
    int dim() const { return n_max + 1; }
};

// <n|alpha> amplitudes, computed with a log-factorial recurrence.
// Throws TruncationError if the truncated tail mass exceeds 1e-12.
FockVector coherent_to_fock(cx alpha, const TruncationPolicy& policy);

// Two-mode expansion of a field-only state; mode-1-major index m1*dim + m2.
FockVector superstate_to_fock(const SuperState& s, const TruncationPolicy& policy);

// exp(-i theta (sigma+ sigma- + n sigma3)) applied to |level>|alpha>,
// returned as the field vector including the level-dependent scalar phase.
FockVector dispersive_exponential_check(double theta, cx alpha, Level level,
                                        const TruncationPolicy& policy);

// Reduced density of one mode of a two-mode pure state (keep_mode is 1 or 2).
FockDensity partial_trace(const FockVector& psi, int keep_mode);

// Spectrum of a Hermitian density, clamped to [0,1] and sorted descending.
std::vector<double> density_eigenvalues(const FockDensity& rho);

double density_entropy(const FockDensity& rho, bool base2 = true);

// Displaced-parity evaluation: W(x,p) = (1/pi) Tr[rho D(2 gamma) Pi] with
// gamma = (x + i p)/sqrt2, so a coherent state peaks at
// (sqrt2 Re alpha, sqrt2 Im alpha) with value 1/pi.
double wigner_fock(const FockDensity& rho, double x, double p);

// Position density <x|rho|x> via Hermite-function recurrence.
double position_density(const FockDensity& rho, double x);

}  // namespace catqed::fock

#endif
