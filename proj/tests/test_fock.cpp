#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "catqed/fock.hpp"
#include "catqed/protocol.hpp"
#include "catqed/wigner.hpp"

using namespace catqed;
using fock::TruncationPolicy;

TEST_CASE("truncation policy rule") {
    CHECK(TruncationPolicy::for_amplitude(3.0).n_max == 43);
    CHECK(TruncationPolicy::for_amplitude(4.0).n_max == 58);
}

TEST_CASE("vacuum is the first basis vector") {
    auto v = fock::coherent_to_fock(0.0, TruncationPolicy::for_amplitude(1.0));
    CHECK(std::abs(v(0) - cx(1.0, 0.0)) < 1e-16);
    CHECK(v.tail(v.size() - 1).norm() < 1e-16);
}

TEST_CASE("coherent vector is normalized with a tiny tail") {
    auto policy = TruncationPolicy::for_amplitude(3.0);
    auto v = fock::coherent_to_fock(cx(2.1, -2.1), policy);
    CHECK(std::abs(v.norm() - 1.0) < 1e-12);
    // the last-coefficient bound holds away from the policy boundary; right
    // at |alpha| = n_max's design amplitude it degrades to ~2e-8
    auto snug = TruncationPolicy::for_amplitude(2.5);
    CHECK(std::abs(fock::coherent_to_fock(2.5, snug)(snug.n_max)) < 1e-8);
}

TEST_CASE("undersized policy raises a truncation error") {
    CHECK_THROWS_AS(fock::coherent_to_fock(3.0, TruncationPolicy{5}), TruncationError);
}

TEST_CASE("two-mode conversion preserves inner products") {
    auto policy = TruncationPolicy::for_amplitude(2.0);
    const cx a(2.0, 0.0);
    SuperState product = field_term(1.0, {a, cx(0.0, 1.0)});
    SuperState cat = normalize(
        sum(field_term(1.0, {a, a}), field_term(1.0, {-a, -a})));
    ProtocolConfig cfg{2.0, 2.0, std::numbers::pi / 2, std::numbers::pi / 2, 0.0};
    SuperState psi1 =
        project_atoms(run_protocol(cfg), MeasurementOutcome::from_label("g1g2g3")).state;

    for (const SuperState* s1 : {&product, &cat, &psi1}) {
        for (const SuperState* s2 : {&product, &cat, &psi1}) {
            auto v1 = fock::superstate_to_fock(*s1, policy);
            auto v2 = fock::superstate_to_fock(*s2, policy);
            CHECK(std::abs(v1.dot(v2) - inner_product(*s1, *s2)) < 1e-9);
        }
    }
}

TEST_CASE("dispersive phases in the number basis") {
    auto policy = TruncationPolicy::for_amplitude(1.5);
    const double theta = 0.9;
    const cx alpha(1.2, -0.3);
    auto base = fock::coherent_to_fock(alpha, policy);

    auto vg = fock::dispersive_exponential_check(theta, alpha, Level::g, policy);
    auto ve = fock::dispersive_exponential_check(theta, alpha, Level::e, policy);
    auto vf = fock::dispersive_exponential_check(theta, alpha, Level::f, policy);
    for (int n = 0; n <= policy.n_max; ++n) {
        CHECK(std::abs(vg(n) - base(n) * std::polar(1.0, theta * n)) < 1e-15);
        CHECK(std::abs(ve(n) - base(n) * std::polar(1.0, -theta * (1.0 + n))) < 1e-15);
        CHECK(std::abs(vf(n) - base(n)) < 1e-16);
    }
}

TEST_CASE("dispersive phases match the closed-form label rewrite") {
    auto policy = TruncationPolicy::for_amplitude(1.5);
    const double theta = 0.9;
    const cx alpha(1.2, -0.3);
    for (Level lvl : {Level::g, Level::e, Level::f}) {
        SuperState s = atom_field_term(1.0, {lvl}, {alpha, cx(0.0, 0.0)});
        SuperState evolved = apply_dispersive(s, 1, 1, theta);
        // strip the atom and the idle second mode
        SuperState field = field_term(evolved.terms[0].coeff, {evolved.terms[0].fields[0]});
        auto via_labels = [&] {
            fock::FockVector v = fock::coherent_to_fock(field.terms[0].fields[0], policy);
            return fock::FockVector(field.terms[0].coeff * v);
        }();
        auto via_exponential = fock::dispersive_exponential_check(theta, alpha, lvl, policy);
        CHECK((via_labels - via_exponential).norm() < 1e-8);
    }
}

TEST_CASE("partial trace of a product state is rank one") {
    auto policy = TruncationPolicy::for_amplitude(1.5);
    SuperState product = field_term(1.0, {cx(1.0, 0.5), cx(-0.7, 0.0)});
    auto rho = fock::partial_trace(fock::superstate_to_fock(product, policy), 1);
    auto eigs = fock::density_eigenvalues(rho);
    CHECK(std::abs(eigs[0] - 1.0) < 1e-10);
    CHECK(eigs[1] < 1e-10);
}

TEST_CASE("partial trace of a Bell-form cat state gives half-half") {
    // |a>|ia> + |-a>|-ia> with a = 4: component overlaps are e^{-32}
    const cx a(4.0, 0.0), ia(0.0, 4.0);
    auto policy = TruncationPolicy::for_amplitude(4.0);
    SuperState bell = normalize(sum(field_term(1.0, {a, ia}), field_term(1.0, {-a, -ia})));
    for (int mode : {1, 2}) {
        auto rho = fock::partial_trace(fock::superstate_to_fock(bell, policy), mode);
        auto eigs = fock::density_eigenvalues(rho);
        CHECK(std::abs(eigs[0] - 0.5) < 1e-10);
        CHECK(std::abs(eigs[1] - 0.5) < 1e-10);
        double sum = 0.0;
        for (double l : eigs) sum += l;
        CHECK(std::abs(sum - 1.0) < 1e-10);
    }
}

TEST_CASE("partial trace reproduces the two-eigenvalue family") {
    // conditional state for f1 g2 e3 at theta = pi/2, alpha = 1
    ProtocolConfig cfg{1.0, 1.0, std::numbers::pi / 2, std::numbers::pi / 2, 0.0};
    SuperState cond =
        project_atoms(run_protocol(cfg), MeasurementOutcome::from_label("f1g2e3")).state;
    auto policy = TruncationPolicy::for_amplitude(1.0);
    auto rho = fock::partial_trace(fock::superstate_to_fock(cond, policy), 1);
    auto eigs = fock::density_eigenvalues(rho);
    const double x = std::exp(-1.0);
    const double lam_hi = (1.0 + x) * (1.0 + x) / (2.0 * (1.0 + x * x));
    const double lam_lo = (1.0 - x) * (1.0 - x) / (2.0 * (1.0 + x * x));
    CHECK(std::abs(eigs[0] - lam_hi) < 1e-8);
    CHECK(std::abs(eigs[1] - lam_lo) < 1e-8);
}

TEST_CASE("displaced parity: vacuum and coherent peaks") {
    auto policy = TruncationPolicy::for_amplitude(1.5);
    fock::FockDensity vac = fock::FockDensity::Zero(policy.dim(), policy.dim());
    vac(0, 0) = 1.0;
    CHECK(std::abs(fock::wigner_fock(vac, 0.0, 0.0) - 1.0 / std::numbers::pi) < 1e-12);

    const cx alpha(0.8, -0.6);
    auto v = fock::coherent_to_fock(alpha, policy);
    fock::FockDensity rho = v * v.adjoint();
    double x0 = std::numbers::sqrt2 * alpha.real();
    double p0 = std::numbers::sqrt2 * alpha.imag();
    CHECK(std::abs(fock::wigner_fock(rho, x0, p0) - 1.0 / std::numbers::pi) < 1e-10);
    CHECK(std::abs(fock::wigner_fock(rho, x0 + 1.0, p0) -
                   std::exp(-1.0) / std::numbers::pi) < 1e-10);
}

TEST_CASE("displaced parity agrees with the dyad-kernel field at random points") {
    ProtocolConfig cfg{2.0, 2.0, std::numbers::pi / 2, std::numbers::pi / 2, 0.0};
    SuperState cond =
        project_atoms(run_protocol(cfg), MeasurementOutcome::from_label("g1g2g3")).state;
    auto policy = TruncationPolicy::for_amplitude(2.0);
    auto rho = fock::partial_trace(fock::superstate_to_fock(cond, policy), 1);

    std::mt19937 rng(17);
    std::uniform_real_distribution<double> pt(-5.0, 5.0);
    for (int i = 0; i < 25; ++i) {
        double x = pt(rng), p = pt(rng);
        cx w = 0.0;
        for (const BasisTerm& tj : cond.terms) {
            for (const BasisTerm& tk : cond.terms) {
                w += tj.coeff * std::conj(tk.coeff) *
                     coherent_overlap(tk.fields[1], tj.fields[1]) *
                     coherent_dyad_wigner(tj.fields[0], tk.fields[0], x, p);
            }
        }
        CHECK(std::abs(w.imag()) < 1e-12);
        CHECK(std::abs(w.real() - fock::wigner_fock(rho, x, p)) < 1e-8);
    }
}

TEST_CASE("position density integrates to one") {
    ProtocolConfig cfg{2.0, 2.0, std::numbers::pi / 3, std::numbers::pi / 3, 0.0};
    SuperState cond =
        project_atoms(run_protocol(cfg), MeasurementOutcome::from_label("g1g2g3")).state;
    auto policy = TruncationPolicy::for_amplitude(2.0);
    auto rho = fock::partial_trace(fock::superstate_to_fock(cond, policy), 1);
    const int n = 801;
    const double lo = -9.0, hi = 9.0, h = (hi - lo) / (n - 1);
    double integral = 0.0;
    for (int i = 0; i < n; ++i) {
        double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        integral += w * fock::position_density(rho, lo + i * h);
    }
    CHECK(std::abs(integral * h - 1.0) < 1e-8);
}
