#ifndef CATQED_ENTANGLEMENT_HPP
#define CATQED_ENTANGLEMENT_HPP

#include <Eigen/Dense>
#include <map>
#include <optional>

#include "catqed/protocol.hpp"
#include "catqed/state.hpp"

// Bipartite entanglement of the conditional two-mode states: the analytic
// 2x2 orthogonalized reduced density matrix for two-product-block states,
// and a general Gram-matrix eigenproblem that works for any rank.

namespace catqed {

// state = coeff_a |mu1>|nu2> + coeff_b |nu1>|mu2>, all four factors
// unit-normalized single-mode states.
struct BipartiteDecomposition {
    SuperState mu1, nu1;  // mode-1 factors
    SuperState mu2, nu2;  // mode-2 factors
    cx coeff_a, coeff_b;
    cx p1, p2;      // <mu1|nu1>, <mu2|nu2>
    double q1, q2;  // sqrt(1 - |p|^2)
    bool collinear1 = false, collinear2 = false;
};

struct ReducedDensity2 {
    Eigen::Matrix2cd m;
};

struct EntropyResult {
    double entropy;  // base-2 by default (ebits)
    std::vector<double> eigenvalues;
    bool conditioning_warning = false;
};

struct PairOverlap {
    cx p;
    double q;
    bool collinear;
};

// Splits a field-only two-mode state into its two product blocks by grouping
// mode-1 labels whose attached mode-2 superpositions are proportional.
// Throws StructureError when more than two blocks are needed.
BipartiteDecomposition decompose(const SuperState& state);

// p = <mu|nu>, q = sqrt(1-|p|^2) for unit-normalized single-mode states.
PairOverlap orthonormalize_pair(const SuperState& mu, const SuperState& nu);

// Reduced density of mode 1 in the orthonormal basis {|mu1>, (|nu1>-p1|mu1>)/q1}.
ReducedDensity2 reduced_density(const BipartiteDecomposition& dec);

// lambda_pm = (1 +- sqrt(1 - 4 det rho)) / 2, returned (larger, smaller).
std::pair<double, double> eigenvalues_2x2(const ReducedDensity2& rho);

EntropyResult entropy(std::pair<double, double> eigs, bool base2 = true);

// Gram-matrix oracle: reduced-density spectrum of either mode from the
// coherent-label Gram matrices, any Schmidt rank.
EntropyResult entropy_gram(const SuperState& state, int mode, bool base2 = true);

// Analytic 2x2 path when the state decomposes, Gram path otherwise.
EntropyResult conditional_entropy(const SuperState& state, bool base2 = true);

struct SweepAxis {
    std::string name;  // theta | theta1 | theta2 | alpha | alpha1 | alpha2
    double min = 0.0, max = 0.0;
    int steps = 1;
};

struct SweepSpec {
    std::string outcome;  // outcome label or "all"
    SweepAxis axis1;
    std::optional<SweepAxis> axis2;
    std::map<std::string, double> fixed;  // alpha1, alpha2, theta1, theta2, delta,
                                          // theta2_over_theta1, alpha2_over_alpha1
};

struct SweepRow {
    double axis1;
    double axis2;  // NaN for 1-D sweeps
    std::string outcome;
    double entropy;           // analytic when available, Gram otherwise
    double entropy_analytic;  // NaN when the state does not decompose
    double entropy_gram;
    double probability;
};

// Row-major over (axis1, axis2, outcome); cells are independent and may be
// evaluated in parallel, assembled in grid order.
std::vector<SweepRow> entropy_sweep(const SweepSpec& spec, int threads = 1);

}  // namespace catqed

#endif
