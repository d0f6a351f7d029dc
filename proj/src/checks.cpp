#include "catqed/checks.hpp"

#include <cmath>
#include <numbers>

#include "catqed/entanglement.hpp"
#include "catqed/fock.hpp"
#include "catqed/protocol.hpp"
#include "catqed/wigner.hpp"

namespace catqed {

namespace {

constexpr double kPi = std::numbers::pi;

double max_label_mag(const SuperState& s) {
    double m = 0.0;
    for (const BasisTerm& t : s.terms) {
        for (cx f : t.fields) m = std::max(m, std::abs(f));
    }
    return m;
}

}  // namespace

double fock_entropy(const SuperState& conditional, int mode) {
    auto policy = fock::TruncationPolicy::for_amplitude(max_label_mag(conditional));
    fock::FockVector psi = fock::superstate_to_fock(conditional, policy);
    return fock::density_entropy(fock::partial_trace(psi, mode));
}

std::vector<CheckResult> run_checks(CheckLevel level, int threads) {
    std::vector<CheckResult> results;
    const bool full = level == CheckLevel::full;

    const std::vector<double> thetas =
        full ? std::vector<double>{kPi / 6, kPi / 3, kPi / 2} : std::vector<double>{kPi / 2};
    const std::vector<double> alphas =
        full ? std::vector<double>{0.5, 1.0, 2.0, 3.0} : std::vector<double>{1.0, 2.0};
    const std::vector<double> deltas = {0.0, 0.7};

    // Circuit output against the printed conditional states, plus outcome
    // completeness, across the parameter grid.
    {
        double worst_fid = 0.0, worst_sum = 0.0;
        for (double th : thetas) {
            for (double al : alphas) {
                for (double d : deltas) {
                    ProtocolConfig cfg{al, al, th, th, d};
                    SuperState final_state = run_protocol(cfg);
                    double psum = 0.0;
                    for (const MeasurementOutcome& o : MeasurementOutcome::all()) {
                        ConditionalResult cond = project_atoms(final_state, o);
                        psum += cond.probability;
                        SuperState ref = reference_state(o, cfg);
                        double fid = std::abs(inner_product(cond.state, ref));
                        worst_fid = std::max(worst_fid, std::abs(1.0 - fid));
                    }
                    worst_sum = std::max(worst_sum, std::abs(psum - 1.0));
                }
            }
        }
        results.push_back({"protocol-vs-reference-fidelity", worst_fid <= 1e-10, worst_fid, 1e-10,
                           "max |1 - |<sim|ref>||"});
        results.push_back({"outcome-probability-completeness", worst_sum <= 1e-10, worst_sum,
                           1e-10, "max |sum(P) - 1|"});
    }

    // The three entropy routes.
    {
        double worst = 0.0;
        for (double th : thetas) {
            for (double al : alphas) {
                ProtocolConfig cfg{al, al, th, th, 0.0};
                SuperState final_state = run_protocol(cfg);
                for (const MeasurementOutcome& o : MeasurementOutcome::all()) {
                    ConditionalResult cond = project_atoms(final_state, o);
                    double e_analytic =
                        entropy(eigenvalues_2x2(reduced_density(decompose(cond.state)))).entropy;
                    double e_gram = entropy_gram(cond.state, 1).entropy;
                    double e_fock = fock_entropy(cond.state, 1);
                    worst = std::max({worst, std::abs(e_analytic - e_gram),
                                      std::abs(e_gram - e_fock), std::abs(e_analytic - e_fock)});
                }
            }
        }
        results.push_back({"entropy-triple-agreement", worst <= 1e-7, worst, 1e-7,
                           "max pairwise |dE| over 2x2, Gram, Fock routes"});
    }

    // Kernel-sum Wigner against the antipodal closed form.
    {
        const int n = full ? 41 : 21;
        PhaseSpaceGrid grid{-6.0, 6.0, -6.0, 6.0, n, n};
        double worst = 0.0;
        for (const char* label : {"g1g2g3", "g1g2e3"}) {
            MeasurementOutcome o = MeasurementOutcome::from_label(label);
            ProtocolConfig cfg{2.0, 2.0, kPi / 2, kPi / 2, 0.0};
            ConditionalResult cond = project_atoms(run_protocol(cfg), o);
            WignerField kernel = reduced_wigner(cond.state, 1, grid, threads);
            GeneralCatWigner closed(pi_half_params(o, cfg.alpha1, cfg.alpha2));
            WignerField analytic = closed.reduced(1, grid, threads);
            for (size_t i = 0; i < kernel.values.size(); ++i) {
                worst = std::max(worst, std::abs(kernel.values[i] - analytic.values[i]));
            }
        }
        results.push_back({"wigner-dual-path", worst <= 1e-8, worst, 1e-8,
                           "max |kernel - closed form| pointwise"});
    }

    // Kernel Wigner against displaced-parity evaluation at spot points.
    {
        MeasurementOutcome o = MeasurementOutcome::from_label("g1g2g3");
        ProtocolConfig cfg{2.0, 2.0, kPi / 2, kPi / 2, 0.0};
        ConditionalResult cond = project_atoms(run_protocol(cfg), o);
        auto policy = fock::TruncationPolicy::for_amplitude(2.0);
        fock::FockDensity rho =
            fock::partial_trace(fock::superstate_to_fock(cond.state, policy), 1);
        double worst = 0.0;
        const int n = full ? 5 : 3;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                double x = -4.0 + 8.0 * i / (n - 1), p = -4.0 + 8.0 * j / (n - 1);
                PhaseSpaceGrid pt{x, x + 1.0, p, p + 1.0, 2, 2};
                WignerField f = reduced_wigner(cond.state, 1, pt);
                worst = std::max(worst, std::abs(f.at(0, 0) - fock::wigner_fock(rho, x, p)));
            }
        }
        results.push_back({"wigner-vs-fock-parity", worst <= 1e-8, worst, 1e-8,
                           "max |kernel - displaced parity| at spot points"});
    }

    if (full) {
        // Physicality of the kernel field on the default wide grid.
        MeasurementOutcome o = MeasurementOutcome::from_label("g1g2g3");
        ProtocolConfig cfg{3.0, 3.0, kPi / 2, kPi / 2, 0.0};
        ConditionalResult cond = project_atoms(run_protocol(cfg), o);
        WignerField f = reduced_wigner(cond.state, 1, PhaseSpaceGrid::wide(3.0), threads);
        double integral_dev = std::abs(field_integral(f) - 1.0);
        results.push_back({"wigner-unit-integral", integral_dev <= 2e-3, integral_dev, 2e-3,
                           "wide-grid Riemann sum"});
        double bound = 0.0;
        for (double v : f.values) bound = std::max(bound, std::abs(v));
        double excess = std::max(0.0, bound - (1.0 / kPi + 1e-9));
        results.push_back({"wigner-magnitude-bound", excess <= 0.0, bound, 1.0 / kPi + 1e-9,
                           "max |W| against 1/pi"});

        double worst_marg = 0.0;
        auto policy = fock::TruncationPolicy::for_amplitude(3.0);
        fock::FockDensity rho =
            fock::partial_trace(fock::superstate_to_fock(cond.state, policy), 1);
        for (int i = 0; i <= 40; ++i) {
            double x = -8.0 + 16.0 * i / 40.0;
            worst_marg = std::max(worst_marg, std::abs(reduced_position_density(cond.state, 1, x) -
                                                       fock::position_density(rho, x)));
        }
        results.push_back({"wigner-fock-marginal", worst_marg <= 1e-6, worst_marg, 1e-6,
                           "max |kernel marginal - Hermite sum|"});
    }

    return results;
}

}  // namespace catqed
