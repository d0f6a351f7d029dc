#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>

#include "catqed/checks.hpp"
#include "catqed/entanglement.hpp"
#include "catqed/fock.hpp"
#include "catqed/protocol.hpp"

using namespace catqed;

namespace {

constexpr double kPi = std::numbers::pi;

SuperState conditional(const char* label, double alpha, double theta, double delta = 0.0) {
    ProtocolConfig cfg{alpha, alpha, theta, theta, delta};
    return project_atoms(run_protocol(cfg), MeasurementOutcome::from_label(label)).state;
}

SuperState one_mode(cx c1, cx l1, cx c2, cx l2) {
    return sum(field_term(c1, {l1}), field_term(c2, {l2}));
}

}  // namespace

TEST_CASE("orthonormalize_pair: collinear and orthogonal limits") {
    SuperState mu = normalize(one_mode(1.0, cx(1.0, 0.0), 1.0, cx(-1.0, 0.0)));
    auto self = orthonormalize_pair(mu, mu);
    CHECK(std::abs(self.p - cx(1.0, 0.0)) < 1e-12);
    CHECK(self.q < 1e-9);
    CHECK(self.collinear);

    // even and odd cats of the same amplitude are exactly orthogonal
    SuperState odd = normalize(one_mode(1.0, cx(1.0, 0.0), -1.0, cx(-1.0, 0.0)));
    auto ortho = orthonormalize_pair(mu, odd);
    CHECK(std::abs(ortho.p) < 1e-14);
    CHECK(std::abs(ortho.q - 1.0) < 1e-14);
    CHECK(!ortho.collinear);
}

TEST_CASE("orthonormalize_pair rejects unnormalized input") {
    SuperState mu = field_term(2.0, {cx(1.0, 0.0)});
    CHECK_THROWS_AS(orthonormalize_pair(mu, mu), std::invalid_argument);
}

TEST_CASE("orthonormalize_pair overlap matches the number-basis expansion") {
    SuperState cond = conditional("g1g2g3", 1.0, kPi / 2);
    BipartiteDecomposition dec = decompose(cond);
    auto policy = fock::TruncationPolicy::for_amplitude(1.0);
    auto to_fock_1mode = [&](const SuperState& s) {
        fock::FockVector v = fock::FockVector::Zero(policy.dim());
        for (const BasisTerm& t : s.terms) {
            v += t.coeff * fock::coherent_to_fock(t.fields[0], policy);
        }
        return v;
    };
    cx p_fock = to_fock_1mode(dec.mu1).dot(to_fock_1mode(dec.nu1));
    CHECK(std::abs(p_fock - dec.p1) < 1e-10);
}

TEST_CASE("decompose recovers the two cat blocks at pi/2") {
    SuperState cond = conditional("g1g2g3", 2.0, kPi / 2);
    BipartiteDecomposition dec = decompose(cond);
    CHECK(!dec.collinear1);

    SuperState horizontal = normalize(one_mode(1.0, cx(2.0, 0.0), cx(0.0, 1.0), cx(-2.0, 0.0)));
    SuperState vertical = normalize(one_mode(1.0, cx(0.0, 2.0), cx(0.0, -1.0), cx(0.0, -2.0)));
    double f_mu = std::abs(inner_product(dec.mu1, horizontal));
    double f_nu = std::abs(inner_product(dec.nu1, vertical));
    // block order is first-appearance; accept the swap
    double f_mu_swapped = std::abs(inner_product(dec.mu1, vertical));
    double f_nu_swapped = std::abs(inner_product(dec.nu1, horizontal));
    bool direct = f_mu > 1.0 - 1e-10 && f_nu > 1.0 - 1e-10;
    bool swapped = f_mu_swapped > 1.0 - 1e-10 && f_nu_swapped > 1.0 - 1e-10;
    CHECK((direct || swapped));
}

TEST_CASE("decompose: symmetric parameters give p1 = p2 and reassembly is exact") {
    for (double theta : {kPi / 6, kPi / 3, kPi / 2}) {
        SuperState cond = conditional("g1g2g3", 1.5, theta);
        BipartiteDecomposition dec = decompose(cond);
        CHECK(std::abs(dec.p1 - dec.p2) < 1e-10);
        CHECK(std::abs(dec.q1 - dec.q2) < 1e-10);

        SuperState rebuilt =
            sum(scaled(tensor_fields(dec.mu1, dec.nu2), dec.coeff_a),
                scaled(tensor_fields(dec.nu1, dec.mu2), dec.coeff_b));
        CHECK(std::abs(std::abs(inner_product(rebuilt, cond)) - 1.0) < 1e-10);
    }
}

TEST_CASE("decompose flags product states as collinear") {
    SuperState product = field_term(1.0, {cx(1.0, 0.0), cx(0.5, 0.5)});
    BipartiteDecomposition dec = decompose(product);
    CHECK(std::abs(dec.coeff_b) < 1e-14);
    CHECK(dec.collinear1);
    CHECK(std::abs(dec.q1) < 1e-9);
}

TEST_CASE("decompose rejects three-block states") {
    SuperState s = field_term(1.0, {cx(1.0, 0.0), cx(1.0, 0.0)});
    s = sum(s, field_term(1.0, {cx(2.0, 0.0), cx(2.0, 0.0)}));
    s = sum(s, field_term(1.0, {cx(3.0, 0.0), cx(3.0, 0.0)}));
    CHECK_THROWS_AS(decompose(s), StructureError);
    // the Gram oracle still handles it
    EntropyResult e = entropy_gram(normalize(s), 1);
    double sum_l = 0.0;
    for (double l : e.eigenvalues) sum_l += l;
    CHECK(std::abs(sum_l - 1.0) < 1e-10);
    CHECK(e.entropy >= 0.0);
}

TEST_CASE("reduced density: determinant identity and Gram agreement") {
    SuperState cond = conditional("g1g2g3", 1.2, kPi / 3);
    BipartiteDecomposition dec = decompose(cond);
    ReducedDensity2 rho = reduced_density(dec);

    CHECK(std::abs((rho.m(0, 0) + rho.m(1, 1)).real() - 1.0) < 1e-12);
    CHECK(std::abs((rho.m - rho.m.adjoint()).norm()) < 1e-12);

    double det = (rho.m(0, 0) * rho.m(1, 1) - rho.m(0, 1) * rho.m(1, 0)).real();
    double expected =
        std::norm(dec.coeff_a) * std::norm(dec.coeff_b) * dec.q1 * dec.q1 * dec.q2 * dec.q2;
    CHECK(std::abs(det - expected) < 1e-12);

    auto [hi, lo] = eigenvalues_2x2(rho);
    EntropyResult gram = entropy_gram(cond, 1);
    REQUIRE(gram.eigenvalues.size() >= 2);
    CHECK(std::abs(hi - gram.eigenvalues[0]) < 1e-10);
    CHECK(std::abs(lo - gram.eigenvalues[1]) < 1e-10);
}

TEST_CASE("reduced density of a product state is rank one") {
    BipartiteDecomposition dec = decompose(field_term(1.0, {cx(1.0, 0.0), cx(2.0, 0.0)}));
    ReducedDensity2 rho = reduced_density(dec);
    double det = (rho.m(0, 0) * rho.m(1, 1) - rho.m(0, 1) * rho.m(1, 0)).real();
    CHECK(std::abs(det) < 1e-14);
    auto [hi, lo] = eigenvalues_2x2(rho);
    CHECK(std::abs(hi - 1.0) < 1e-12);
    CHECK(std::abs(lo) < 1e-12);
}

TEST_CASE("two-by-two eigenvalue formula") {
    ReducedDensity2 mixed;
    mixed.m << 0.5, 0.0, 0.0, 0.5;
    auto [h1, l1] = eigenvalues_2x2(mixed);
    CHECK(h1 == doctest::Approx(0.5));
    CHECK(l1 == doctest::Approx(0.5));

    ReducedDensity2 pure;
    pure.m << 1.0, 0.0, 0.0, 0.0;
    auto [h2, l2] = eigenvalues_2x2(pure);
    CHECK(h2 == doctest::Approx(1.0));
    CHECK(l2 == doctest::Approx(0.0));
}

TEST_CASE("the two spectral families split by the atom-1 outcome") {
    // f1 rows: lambda = (1 -+ e^{-a^2})^2 / (2 (1 + e^{-2 a^2})); g1 rows: 1/2 each
    for (double alpha : {0.5, 1.0, 2.0, 3.0}) {
        const double x = std::exp(-alpha * alpha);
        const double denom = 2.0 * (1.0 + x * x);
        for (const char* label : {"f1g2g3", "f1e2g3", "f1g2e3", "f1e2e3"}) {
            SuperState cond = conditional(label, alpha, kPi / 2);
            auto [hi, lo] = eigenvalues_2x2(reduced_density(decompose(cond)));
            CHECK(std::abs(hi - (1.0 + x) * (1.0 + x) / denom) < 1e-10);
            CHECK(std::abs(lo - (1.0 - x) * (1.0 - x) / denom) < 1e-10);
        }
        for (const char* label : {"g1g2g3", "g1e2g3", "g1g2e3", "g1e2e3"}) {
            SuperState cond = conditional(label, alpha, kPi / 2);
            auto [hi, lo] = eigenvalues_2x2(reduced_density(decompose(cond)));
            CHECK(std::abs(hi - 0.5) < 1e-10);
            CHECK(std::abs(lo - 0.5) < 1e-10);
        }
    }
}

TEST_CASE("entropy of the closed-form pair at alpha = 1") {
    const double x = std::exp(-1.0);
    const double denom = 2.0 * (1.0 + x * x);
    const double hi = (1.0 + x) * (1.0 + x) / denom;
    const double lo = (1.0 - x) * (1.0 - x) / denom;
    const double expected = -(hi * std::log2(hi) + lo * std::log2(lo));
    EntropyResult e = entropy({hi, lo});
    CHECK(e.entropy == doctest::Approx(expected).epsilon(1e-12));
    CHECK(e.entropy == doctest::Approx(0.67118744).epsilon(1e-6));

    SuperState cond = conditional("f1g2e3", 1.0, kPi / 2);
    CHECK(std::abs(conditional_entropy(cond).entropy - expected) < 1e-10);
}

TEST_CASE("entropy endpoints and base flag") {
    CHECK(entropy({0.5, 0.5}).entropy == doctest::Approx(1.0));
    CHECK(entropy({1.0, 0.0}).entropy == doctest::Approx(0.0));
    CHECK(entropy({0.5, 0.5}, false).entropy == doctest::Approx(std::numbers::ln2));
    CHECK_THROWS_AS(entropy({0.7, 0.7}), std::invalid_argument);
}

TEST_CASE("Gram entropy: product, Bell form, and the one-ebit state") {
    CHECK(entropy_gram(field_term(1.0, {cx(1.0, 0.0), cx(0.5, 0.0)}), 1).entropy < 1e-12);

    // Bell form with effectively orthogonal components
    const cx a(4.0, 0.0), ia(0.0, 4.0);
    SuperState bell = normalize(sum(field_term(1.0, {a, ia}), field_term(1.0, {-a, -ia})));
    CHECK(std::abs(entropy_gram(bell, 1).entropy - 1.0) < 1e-10);

    SuperState cond = conditional("g1g2g3", 3.0, kPi / 2);
    CHECK(std::abs(entropy_gram(cond, 1).entropy - 1.0) < 1e-8);
}

TEST_CASE("Gram entropy is symmetric between the modes") {
    for (const char* label : {"g1g2g3", "f1g2e3", "g1e2g3"}) {
        SuperState cond = conditional(label, 1.3, kPi / 3);
        CHECK(std::abs(entropy_gram(cond, 1).entropy - entropy_gram(cond, 2).entropy) < 1e-8);
    }
}

TEST_CASE("Gram entropy warns on ill-conditioned label sets") {
    SuperState s = normalize(sum(field_term(1.0, {cx(1.0, 0.0), cx(1.0, 0.0)}),
                                 field_term(1.0, {cx(1.0 + 1e-7, 0.0), cx(-1.0, 0.0)})));
    EntropyResult e = entropy_gram(s, 1);
    CHECK(e.conditioning_warning);
}

TEST_CASE("three entropy routes agree on the standard grid") {
    for (double theta : {kPi / 6, kPi / 2}) {
        for (double alpha : {0.5, 2.0}) {
            for (const char* label : {"g1g2g3", "f1g2e3"}) {
                SuperState cond = conditional(label, alpha, theta);
                double e2 = entropy(eigenvalues_2x2(reduced_density(decompose(cond)))).entropy;
                double eg = entropy_gram(cond, 1).entropy;
                double ef = fock_entropy(cond, 1);
                CHECK(std::abs(e2 - eg) < 1e-8);
                CHECK(std::abs(eg - ef) < 1e-7);
            }
        }
    }
}

TEST_CASE("sweep: single cell equals the direct computation") {
    SweepSpec spec;
    spec.outcome = "g1g2g3";
    spec.axis1 = {"alpha", 2.0, 2.0, 1};
    spec.fixed = {{"theta1", kPi / 2}, {"theta2", kPi / 2}};
    auto rows = entropy_sweep(spec);
    REQUIRE(rows.size() == 1);
    double direct = conditional_entropy(conditional("g1g2g3", 2.0, kPi / 2)).entropy;
    CHECK(rows[0].entropy == doctest::Approx(direct).epsilon(1e-12));
    CHECK(rows[0].outcome == "g1g2g3");
}

TEST_CASE("sweep over alpha at pi/2: one-ebit group and saturating group") {
    SweepSpec spec;
    spec.outcome = "all";
    spec.axis1 = {"alpha", 0.5, 3.0, 6};
    spec.fixed = {{"theta1", kPi / 2}, {"theta2", kPi / 2}};
    auto rows = entropy_sweep(spec, 2);
    REQUIRE(rows.size() == 48);
    std::map<std::string, std::vector<double>> by_outcome;
    for (const auto& r : rows) by_outcome[r.outcome].push_back(r.entropy);
    // one ebit whenever atom 1 is detected in g; the f1 group saturates
    for (const char* one_ebit : {"g1g2g3", "g1e2g3", "g1g2e3", "g1e2e3"}) {
        for (double e : by_outcome[one_ebit]) CHECK(std::abs(e - 1.0) < 1e-8);
    }
    for (const char* saturating : {"f1g2g3", "f1e2g3", "f1g2e3", "f1e2e3"}) {
        const auto& es = by_outcome[saturating];
        for (size_t i = 1; i < es.size(); ++i) CHECK(es[i] >= es[i - 1] - 1e-12);
        CHECK(es.back() > 0.99);
    }
}

TEST_CASE("sweep: symmetric plane is maximal for the Bell-form outcome only") {
    SweepSpec spec;
    spec.outcome = "g1g2g3";
    spec.axis1 = {"theta", kPi / 12, kPi / 2, 5};
    spec.axis2 = SweepAxis{"alpha", 0.5, 3.0, 5};
    auto rows = entropy_sweep(spec, 2);
    REQUIRE(rows.size() == 25);
    for (const auto& r : rows) CHECK(r.entropy >= 0.9);

    spec.outcome = "f1g2e3";
    auto rows7 = entropy_sweep(spec, 2);
    double min_e = 1.0;
    for (const auto& r : rows7) min_e = std::min(min_e, r.entropy);
    CHECK(min_e < 0.9);
}

TEST_CASE("detuned-angle plane holds both entanglement bands") {
    SweepSpec spec;
    spec.outcome = "g1g2g3";
    spec.axis1 = {"theta1", kPi / 12, kPi / 2, 8};
    spec.axis2 = SweepAxis{"alpha", 0.5, 3.0, 8};
    spec.fixed = {{"theta2_over_theta1", 0.5}};
    double high = 0.0, low = 1.0;
    for (const auto& r : entropy_sweep(spec, 2)) {
        high = std::max(high, r.entropy);
        low = std::min(low, r.entropy);
    }
    CHECK(high > 0.9);
    CHECK(low < 0.1);
}

TEST_CASE("full interaction period restores separability; half period does not") {
    // theta = 2 pi is a true no-interaction point for every outcome
    SweepSpec spec;
    spec.outcome = "all";
    spec.axis1 = {"theta", 2.0 * kPi, 2.0 * kPi, 1};
    spec.fixed = {{"alpha1", 2.0}, {"alpha2", 2.0}};
    for (const auto& r : entropy_sweep(spec)) CHECK(r.entropy <= 1e-8);

    // at theta = pi the two surviving outcomes are Bell-like pairs of
    // counter-rotated coherent states, which stay maximally entangled
    SuperState fpi = run_protocol({2.0, 2.0, kPi, kPi, 0.0});
    auto surviving = project_atoms(fpi, MeasurementOutcome::from_label("g1e2e3"));
    CHECK(std::abs(surviving.probability - 0.5) < 1e-6);
    CHECK(entropy_gram(surviving.state, 1).entropy > 0.99);
}

TEST_CASE("sweep rows are deterministic across thread counts") {
    SweepSpec spec;
    spec.outcome = "g1g2g3";
    spec.axis1 = {"theta", kPi / 8, kPi / 2, 4};
    spec.axis2 = SweepAxis{"alpha", 0.8, 2.2, 3};
    auto a = entropy_sweep(spec, 1);
    auto b = entropy_sweep(spec, 4);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].axis1 == b[i].axis1);
        CHECK(a[i].axis2 == b[i].axis2);
        CHECK(a[i].entropy == b[i].entropy);
    }
}
