#ifndef CATQED_WIGNER_HPP
#define CATQED_WIGNER_HPP

#include <numbers>
#include <utility>

#include "catqed/protocol.hpp"
#include "catqed/state.hpp"

// Reduced single-mode Wigner functions of the two-mode conditional states.
//
// Convention: alpha = (x + i p)/sqrt2, so a coherent state |alpha> is a
// Gaussian of peak 1/pi centered at (sqrt2 Re alpha, sqrt2 Im alpha), and
// the function integrates to 1 over the (x, p) plane.
//
// The primary path sums the exact Wigner transform of coherent dyads
// |a><b| over term pairs; the trace over the other mode collapses to
// coherent overlaps. The closed-form path evaluates the same function for
// antipodal-pair cat states as a product of per-mode cat/cross-cat
// expressions (diagonal and off-diagonal components), which cross-checks
// the kernel path on the pi/2 family.

namespace catqed {

struct PhaseSpaceGrid {
    double x_min, x_max, p_min, p_max;
    int nx, np;

    double dx() const { return (x_max - x_min) / (nx - 1); }
    double dp() const { return (p_max - p_min) / (np - 1); }
    double x(int i) const { return x_min + i * dx(); }
    double p(int j) const { return p_min + j * dp(); }

    // +-(sqrt2 |alpha| + 5) captures every lobe and its tails.
    static PhaseSpaceGrid wide(double alpha_mag, int n = 201);
    static PhaseSpaceGrid zoom(double half_width = 1.5, int n = 201);
};

struct WignerConvention {
    double alpha_center_scale = std::numbers::sqrt2;
    std::string normalization = "unit_integral";
};

struct WignerField {
    PhaseSpaceGrid grid;
    std::vector<double> values;  // row-major over x, then p
    WignerConvention convention;

    double at(int ix, int jp) const { return values[static_cast<size_t>(ix) * grid.np + jp]; }
    double& at(int ix, int jp) { return values[static_cast<size_t>(ix) * grid.np + jp]; }
};

// Wigner transform of the dyad |alpha><beta| at one phase-space point;
// Hermitian in (alpha, beta) and bounded by 1/pi in modulus.
cx coherent_dyad_wigner(cx alpha, cx beta, double x, double p);

// W_mode(x,p) = sum_{jk} c_j conj(c_k) <other_k|other_j> K(kept_j, kept_k).
// Throws HermiticityError if the imaginary residue exceeds 1e-9.
WignerField reduced_wigner(const SuperState& state, int mode, const PhaseSpaceGrid& grid,
                           int threads = 1);

// Marginal integral of the reduced Wigner function over p, in closed form.
double reduced_position_density(const SuperState& state, int mode, double x);

// (1/8) [ A (|a1 e^{i th1}> + e^{i xi1}|-a1 e^{i th1}>)(|a2 e^{i ph2}> + e^{i zt2}|-a2 e^{i ph2}>)
//       + B (|a1 e^{i ph1}> + e^{i zt1}|-a1 e^{i ph1}>)(|a2 e^{i th2}> + e^{i xi2}|-a2 e^{i th2}>) ]
struct GeneralCatParams {
    double theta1, theta2, phi1, phi2;
    double xi1, xi2, zeta1, zeta2;
    cx coeff_A, coeff_B;
    cx alpha1, alpha2;
};

// Closed-form evaluator for the antipodal cat family. The four components
// (two diagonal, two off-diagonal) are combined with the cat-norm products
// replaced by the squared norm of the full superposition, which is the
// normalization that makes the total integrate to one.
class GeneralCatWigner {
public:
    explicit GeneralCatWigner(const GeneralCatParams& params);

    double evaluate(double x1, double p1, double x2, double p2) const;
    WignerField reduced(int mode, const PhaseSpaceGrid& grid, int threads = 1) const;

    const GeneralCatParams& params() const { return params_; }
    double state_norm2() const { return nu2_; }

    // The parameterized state as a term list, for fidelity checks.
    SuperState state() const;

private:
    GeneralCatParams params_;
    double nu2_;
};

// Parameter mapping of the eight theta = pi/2 conditional states onto the
// antipodal cat form (modulo global phase).
GeneralCatParams pi_half_params(const MeasurementOutcome& outcome, cx alpha1, cx alpha2);

double field_integral(const WignerField& f);
double field_min(const WignerField& f);
double field_max(const WignerField& f);

// Integral of max(0, -W); zero for Gaussian states.
double negativity_volume(const WignerField& f);

// Coherent-lobe positions: local maxima above half the global maximum of a
// vacuum-width-smoothed copy of the field. Smoothing removes interference
// fringes, which otherwise dominate the raw maxima of cat-like states.
std::vector<std::pair<double, double>> lobe_positions(const WignerField& f);

}  // namespace catqed

#endif
