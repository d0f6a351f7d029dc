#include "catqed/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace catqed::fock {

namespace {
constexpr double kTailBudget = 1e-12;
}

TruncationPolicy TruncationPolicy::for_amplitude(double max_abs_alpha) {
    double a = std::abs(max_abs_alpha);
    return TruncationPolicy{static_cast<int>(std::ceil(a * a + 8.0 * a + 10.0))};
}

FockVector coherent_to_fock(cx alpha, const TruncationPolicy& policy) {
    const int dim = policy.dim();
    FockVector v(dim);
    if (std::abs(alpha) == 0.0) {
        v.setZero();
        v(0) = 1.0;
        return v;
    }
    const double log_mag = std::log(std::abs(alpha));
    const double phase = std::arg(alpha);
    const double half_n2 = 0.5 * std::norm(alpha);
    for (int n = 0; n < dim; ++n) {
        double lm = -half_n2 + n * log_mag - 0.5 * std::lgamma(n + 1.0);
        v(n) = std::polar(std::exp(lm), n * phase);
    }
    double tail = 1.0 - v.squaredNorm();
    if (tail > kTailBudget) {
        throw TruncationError("coherent_to_fock: tail mass " + std::to_string(tail) +
                              " exceeds budget for |alpha| = " + std::to_string(std::abs(alpha)));
    }
    return v;
}

FockVector superstate_to_fock(const SuperState& s, const TruncationPolicy& policy) {
    if (s.num_atoms() != 0 || s.num_modes() != 2) {
        throw ShapeError("superstate_to_fock: field-only two-mode state expected");
    }
    const int dim = policy.dim();
    FockVector psi = FockVector::Zero(dim * dim);
    for (const BasisTerm& t : s.terms) {
        FockVector a = coherent_to_fock(t.fields[0], policy);
        FockVector b = coherent_to_fock(t.fields[1], policy);
        for (int m = 0; m < dim; ++m) {
            psi.segment(m * dim, dim) += t.coeff * a(m) * b;
        }
    }
    return psi;
}

FockVector dispersive_exponential_check(double theta, cx alpha, Level level,
                                        const TruncationPolicy& policy) {
    FockVector v = coherent_to_fock(alpha, policy);
    // H/(hbar chi) is diagonal: (sigma+ sigma- + n sigma3) -> -n on |g>|n>,
    // (1+n) on |e>|n>, and |f> does not couple.
    switch (level) {
        case Level::g:
            for (int n = 0; n < v.size(); ++n) v(n) *= std::polar(1.0, theta * n);
            break;
        case Level::e:
            for (int n = 0; n < v.size(); ++n) v(n) *= std::polar(1.0, -theta * (1.0 + n));
            break;
        case Level::f:
            break;
    }
    return v;
}

FockDensity partial_trace(const FockVector& psi, int keep_mode) {
    const int total = static_cast<int>(psi.size());
    const int dim = static_cast<int>(std::lround(std::sqrt(static_cast<double>(total))));
    if (dim * dim != total) throw ShapeError("partial_trace: not a two-mode vector");
    FockDensity rho = FockDensity::Zero(dim, dim);
    if (keep_mode == 1) {
        // rho1(m,n) = sum_k psi[m,k] conj(psi[n,k]); dot() conjugates its left side.
        for (int m = 0; m < dim; ++m)
            for (int n = 0; n < dim; ++n)
                rho(m, n) = psi.segment(n * dim, dim).dot(psi.segment(m * dim, dim));
    } else if (keep_mode == 2) {
        for (int k = 0; k < dim; ++k) {
            const auto col = psi.segment(k * dim, dim);
            rho.noalias() += col * col.adjoint();
        }
    } else {
        throw ShapeError("partial_trace: keep_mode must be 1 or 2");
    }
    return rho;
}

std::vector<double> density_eigenvalues(const FockDensity& rho) {
    Eigen::SelfAdjointEigenSolver<FockDensity> solver(rho, Eigen::EigenvaluesOnly);
    std::vector<double> eigs(solver.eigenvalues().data(),
                             solver.eigenvalues().data() + solver.eigenvalues().size());
    for (double& l : eigs) l = std::clamp(l, 0.0, 1.0);
    std::sort(eigs.rbegin(), eigs.rend());
    return eigs;
}

double density_entropy(const FockDensity& rho, bool base2) {
    double acc = 0.0;
    for (double l : density_eigenvalues(rho)) {
        if (l > 0.0) acc -= l * std::log(l);
    }
    return base2 ? acc / std::numbers::ln2 : acc;
}

double wigner_fock(const FockDensity& rho, double x, double p) {
    const int dim = static_cast<int>(rho.rows());
    const cx beta = std::sqrt(2.0) * cx(x, p);  // D(2 gamma) displacement
    // Columns of D(beta) restricted to the density's support. col_n follows
    // from D|n> = (a^dag - conj(beta)) D|n-1> / sqrt(n); the raising operator
    // only moves amplitude upward, so the bottom block is exact.
    Eigen::MatrixXcd d(dim, dim);
    {
        const double b2 = std::norm(beta);
        if (std::abs(beta) == 0.0) {
            d.col(0).setZero();
            d(0, 0) = 1.0;
        } else {
            const double log_mag = std::log(std::abs(beta));
            const double phase = std::arg(beta);
            for (int m = 0; m < dim; ++m) {
                double lm = -0.5 * b2 + m * log_mag - 0.5 * std::lgamma(m + 1.0);
                d(m, 0) = std::polar(std::exp(lm), m * phase);
            }
        }
        const cx bconj = std::conj(beta);
        for (int n = 1; n < dim; ++n) {
            const double inv = 1.0 / std::sqrt(static_cast<double>(n));
            d(0, n) = inv * (-bconj * d(0, n - 1));
            for (int m = 1; m < dim; ++m) {
                d(m, n) = inv * (std::sqrt(static_cast<double>(m)) * d(m - 1, n - 1) -
                                 bconj * d(m, n - 1));
            }
        }
    }
    // W = (1/pi) sum_{m,n} (-1)^m rho(m,n) <n|D(beta)|m>
    cx acc = 0.0;
    for (int m = 0; m < dim; ++m) {
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        for (int n = 0; n < dim; ++n) acc += sign * rho(m, n) * d(n, m);
    }
    return acc.real() / std::numbers::pi;
}

double position_density(const FockDensity& rho, double x) {
    const int dim = static_cast<int>(rho.rows());
    // Hermite functions, x convention matching x_op = (a + a^dag)/sqrt2.
    std::vector<double> phi(dim);
    phi[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
    if (dim > 1) phi[1] = std::sqrt(2.0) * x * phi[0];
    for (int n = 2; n < dim; ++n) {
        phi[n] = std::sqrt(2.0 / n) * x * phi[n - 1] - std::sqrt((n - 1.0) / n) * phi[n - 2];
    }
    cx acc = 0.0;
    for (int m = 0; m < dim; ++m)
        for (int n = 0; n < dim; ++n) acc += rho(m, n) * phi[m] * phi[n];
    return acc.real();
}

}  // namespace catqed::fock
