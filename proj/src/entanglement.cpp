#include "catqed/entanglement.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

namespace catqed {

namespace {

SuperState mode_factor(const BasisTerm& t, int mode) {
    return field_term(t.coeff, {t.fields[mode]});
}

bool label_less(cx a, cx b) {
    if (a.real() < b.real() - kLabelTol) return true;
    if (b.real() < a.real() - kLabelTol) return false;
    return a.imag() < b.imag() - kLabelTol;
}

// Rotates a single-mode factor so the coefficient of its smallest label is
// real positive; returns the removed phase. A label-based convention keeps
// the four factors of symmetric-parameter states phase-aligned, which is
// what makes p1 = p2 hold there.
cx canonicalize_factor(SuperState& factor) {
    size_t pick = 0;
    for (size_t i = 1; i < factor.terms.size(); ++i) {
        if (label_less(factor.terms[i].fields[0], factor.terms[pick].fields[0])) pick = i;
    }
    cx phase = std::polar(1.0, std::arg(factor.terms[pick].coeff));
    for (BasisTerm& t : factor.terms) t.coeff *= std::conj(phase);
    return phase;
}

double entropy_of(const std::vector<double>& eigs, bool base2) {
    double acc = 0.0;
    for (double l : eigs) {
        if (l > 0.0) acc -= l * std::log(l);
    }
    return base2 ? acc / std::numbers::ln2 : acc;
}

}  // namespace

PairOverlap orthonormalize_pair(const SuperState& mu, const SuperState& nu) {
    if (std::abs(norm_squared(mu) - 1.0) > 1e-9 || std::abs(norm_squared(nu) - 1.0) > 1e-9) {
        throw std::invalid_argument("orthonormalize_pair: inputs must be unit-normalized");
    }
    cx p = inner_product(mu, nu);
    // 1 - |p|^2 is dominated by rounding below ~1e-14; snap that range to an
    // exact zero so collinear pairs are reported as such.
    double q2 = 1.0 - std::norm(p);
    double q = q2 > 1e-14 ? std::sqrt(q2) : 0.0;
    return PairOverlap{p, q, q <= kCollinearQ};
}

BipartiteDecomposition decompose(const SuperState& state) {
    if (state.num_atoms() != 0 || state.num_modes() != 2) {
        throw ShapeError("decompose: field-only two-mode state expected");
    }
    SuperState s = normalize(state);

    // Group terms by mode-1 label; each group carries a mode-2 superposition.
    struct Group {
        cx label1;
        SuperState w;  // mode-2 part
    };
    std::vector<Group> groups;
    for (const BasisTerm& t : s.terms) {
        auto it = std::find_if(groups.begin(), groups.end(),
                               [&](const Group& g) { return labels_equal(g.label1, t.fields[0]); });
        if (it == groups.end()) {
            groups.push_back(Group{t.fields[0], mode_factor(t, 1)});
        } else {
            it->w = sum(it->w, mode_factor(t, 1));
        }
    }

    // Two proportionality classes of mode-2 parts = the two product blocks.
    struct Block {
        SuperState w_hat;                        // normalized mode-2 factor
        std::vector<std::pair<cx, cx>> entries;  // (mode-1 label, scale)
    };
    std::vector<Block> blocks;
    for (const Group& g : groups) {
        const double wnorm = std::sqrt(norm_squared(g.w));
        if (wnorm * wnorm <= kNullNorm2) continue;
        SuperState w_hat = normalize(g.w);
        bool placed = false;
        for (Block& b : blocks) {
            cx ov = inner_product(b.w_hat, w_hat);
            if (std::abs(std::abs(ov) - 1.0) <= 1e-10) {
                b.entries.push_back({g.label1, inner_product(b.w_hat, g.w)});
                placed = true;
                break;
            }
        }
        if (!placed) {
            canonicalize_factor(w_hat);
            blocks.push_back(Block{std::move(w_hat), {}});
            blocks.back().entries.push_back({g.label1, inner_product(blocks.back().w_hat, g.w)});
        }
    }
    if (blocks.empty() || blocks.size() > 2) {
        throw StructureError("decompose: state is not a sum of two product blocks (" +
                             std::to_string(blocks.size()) + " found)");
    }

    auto block_mode1 = [](const Block& b) {
        SuperState m;
        for (const auto& [label, scale] : b.entries) m = sum(m, field_term(scale, {label}));
        return m;
    };

    BipartiteDecomposition dec;
    SuperState m1 = block_mode1(blocks[0]);
    dec.coeff_a = std::sqrt(norm_squared(m1));
    dec.mu1 = normalize(m1);
    dec.coeff_a *= canonicalize_factor(dec.mu1);
    dec.nu2 = blocks[0].w_hat;
    if (blocks.size() == 2) {
        SuperState n1 = block_mode1(blocks[1]);
        dec.coeff_b = std::sqrt(norm_squared(n1));
        dec.nu1 = normalize(n1);
        dec.coeff_b *= canonicalize_factor(dec.nu1);
        dec.mu2 = blocks[1].w_hat;
    } else {
        // Product state: the second block is a copy of the first with zero weight.
        dec.nu1 = dec.mu1;
        dec.mu2 = dec.nu2;
        dec.coeff_b = 0.0;
    }

    PairOverlap o1 = orthonormalize_pair(dec.mu1, dec.nu1);
    PairOverlap o2 = orthonormalize_pair(dec.mu2, dec.nu2);
    dec.p1 = o1.p;
    dec.q1 = o1.q;
    dec.collinear1 = o1.collinear;
    dec.p2 = o2.p;
    dec.q2 = o2.q;
    dec.collinear2 = o2.collinear;
    return dec;
}

ReducedDensity2 reduced_density(const BipartiteDecomposition& dec) {
    // In the orthonormal bases the state is c00|00> + c01|01> + c10|10>.
    cx c00 = dec.coeff_a * dec.p2 + dec.coeff_b * dec.p1;
    cx c01 = dec.coeff_a * dec.q2;
    cx c10 = dec.coeff_b * dec.q1;
    ReducedDensity2 rho;
    rho.m(0, 0) = std::norm(c00) + std::norm(c01);
    rho.m(0, 1) = c00 * std::conj(c10);
    rho.m(1, 0) = c10 * std::conj(c00);
    rho.m(1, 1) = std::norm(c10);
    return rho;
}

std::pair<double, double> eigenvalues_2x2(const ReducedDensity2& rho) {
    double tr = (rho.m(0, 0) + rho.m(1, 1)).real();
    if (std::abs(tr - 1.0) > 1e-9) {
        throw std::invalid_argument("eigenvalues_2x2: density trace must be 1");
    }
    double det = (rho.m(0, 0) * rho.m(1, 1) - rho.m(0, 1) * rho.m(1, 0)).real();
    if (1.0 - 4.0 * det < -1e-12) {
        throw std::runtime_error("eigenvalues_2x2: 1 - 4 det < 0 beyond tolerance");
    }
    // 1 - 4 det rewritten as (rho00 - rho11)^2 + 4 |rho01|^2: same value at
    // unit trace, but free of the cancellation that otherwise floors the
    // maximally mixed point at sqrt(eps).
    double gap = (rho.m(0, 0) - rho.m(1, 1)).real();
    double root = std::sqrt(gap * gap + 4.0 * std::norm(rho.m(0, 1)));
    double lo = std::max(0.5 * (1.0 - root), 0.0);
    return {0.5 * (1.0 + root), lo};
}

EntropyResult entropy(std::pair<double, double> eigs, bool base2) {
    auto [hi, lo] = eigs;
    if (hi < -1e-12 || lo < -1e-12 || std::abs(hi + lo - 1.0) > 1e-10) {
        throw std::invalid_argument("entropy: eigenvalues must be in [0,1] and sum to 1");
    }
    std::vector<double> l = {std::clamp(hi, 0.0, 1.0), std::clamp(lo, 0.0, 1.0)};
    return EntropyResult{entropy_of(l, base2), l, false};
}

EntropyResult entropy_gram(const SuperState& state, int mode, bool base2) {
    if (state.num_atoms() != 0 || state.num_modes() != 2) {
        throw ShapeError("entropy_gram: field-only two-mode state expected");
    }
    if (mode != 1 && mode != 2) throw std::invalid_argument("entropy_gram: mode must be 1 or 2");
    SuperState s = normalize(state);
    const int n = static_cast<int>(s.terms.size());
    const int keep = mode - 1;
    const int traced = 1 - keep;

    // rho_keep = sum_{jk} c_j conj(c_k) <v_k|v_j> |u_j><u_k| in the
    // non-orthogonal frame; its spectrum equals that of S^{1/2} B S^{1/2}
    // with S the kept-mode Gram matrix.
    Eigen::MatrixXcd S(n, n), B(n, n);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            S(j, k) = coherent_overlap(s.terms[j].fields[keep], s.terms[k].fields[keep]);
            B(j, k) = s.terms[j].coeff * std::conj(s.terms[k].coeff) *
                      coherent_overlap(s.terms[k].fields[traced], s.terms[j].fields[traced]);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> gram(S);
    const auto& sv = gram.eigenvalues();
    bool warn = sv(0) <= 0.0 || sv(n - 1) / std::max(sv(0), 0.0) > 1e12;
    Eigen::VectorXd roots(n);
    for (int i = 0; i < n; ++i) roots(i) = std::sqrt(std::max(sv(i), 0.0));
    Eigen::MatrixXcd sqrtS =
        gram.eigenvectors() * roots.asDiagonal() * gram.eigenvectors().adjoint();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sqrtS * B * sqrtS,
                                                           Eigen::EigenvaluesOnly);
    std::vector<double> eigs;
    for (int i = n - 1; i >= 0; --i) {
        double l = std::clamp(solver.eigenvalues()(i), 0.0, 1.0);
        if (l > 1e-15) eigs.push_back(l);
    }
    return EntropyResult{entropy_of(eigs, base2), eigs, warn};
}

EntropyResult conditional_entropy(const SuperState& state, bool base2) {
    try {
        BipartiteDecomposition dec = decompose(state);
        return entropy(eigenvalues_2x2(reduced_density(dec)), base2);
    } catch (const StructureError&) {
        return entropy_gram(state, 1, base2);
    }
}

namespace {

ProtocolConfig cell_config(const SweepSpec& spec, double v1, double v2, bool has2) {
    auto fixed = [&](const std::string& key, double fallback) {
        auto it = spec.fixed.find(key);
        return it == spec.fixed.end() ? fallback : it->second;
    };
    double theta1 = fixed("theta1", std::numbers::pi / 2);
    double theta2 = fixed("theta2", std::numbers::pi / 2);
    double a1 = fixed("alpha1", 2.0);
    double a2 = fixed("alpha2", 2.0);
    double delta = fixed("delta", 0.0);

    auto assign = [&](const std::string& name, double v) {
        if (name == "theta") {
            theta1 = theta2 = v;
        } else if (name == "theta1") {
            theta1 = v;
        } else if (name == "theta2") {
            theta2 = v;
        } else if (name == "alpha") {
            a1 = a2 = v;
        } else if (name == "alpha1") {
            a1 = v;
        } else if (name == "alpha2") {
            a2 = v;
        } else {
            throw std::invalid_argument("unknown sweep axis \"" + name + "\"");
        }
    };
    assign(spec.axis1.name, v1);
    if (has2) assign(spec.axis2->name, v2);

    if (auto it = spec.fixed.find("theta2_over_theta1"); it != spec.fixed.end()) {
        theta2 = it->second * theta1;
    }
    if (auto it = spec.fixed.find("alpha2_over_alpha1"); it != spec.fixed.end()) {
        a2 = it->second * a1;
    }
    return ProtocolConfig{cx(a1, 0.0), cx(a2, 0.0), theta1, theta2, delta};
}

double axis_value(const SweepAxis& ax, int i) {
    if (ax.steps <= 1) return ax.min;
    return ax.min + (ax.max - ax.min) * static_cast<double>(i) / (ax.steps - 1);
}

}  // namespace

std::vector<SweepRow> entropy_sweep(const SweepSpec& spec, int threads) {
    std::vector<MeasurementOutcome> outcomes;
    if (spec.outcome == "all") {
        outcomes.assign(MeasurementOutcome::all().begin(), MeasurementOutcome::all().end());
    } else {
        outcomes.push_back(MeasurementOutcome::from_label(spec.outcome));
    }

    const bool has2 = spec.axis2.has_value();
    const int n1 = spec.axis1.steps;
    const int n2 = has2 ? spec.axis2->steps : 1;
    const int cells = n1 * n2;
    std::vector<SweepRow> rows(static_cast<size_t>(cells) * outcomes.size());

    auto eval_cell = [&](int cell) {
        const int i = cell / n2;
        const int j = cell % n2;
        const double v1 = axis_value(spec.axis1, i);
        const double v2 = has2 ? axis_value(*spec.axis2, j) : std::nan("");
        ProtocolConfig cfg = cell_config(spec, v1, v2, has2);
        SuperState final_state = run_protocol(cfg);
        for (size_t o = 0; o < outcomes.size(); ++o) {
            SweepRow row;
            row.axis1 = v1;
            row.axis2 = v2;
            row.outcome = outcomes[o].label();
            row.entropy_analytic = std::nan("");
            try {
                ConditionalResult cond = project_atoms(final_state, outcomes[o]);
                row.probability = cond.probability;
                row.entropy_gram = entropy_gram(cond.state, 1).entropy;
                try {
                    BipartiteDecomposition dec = decompose(cond.state);
                    row.entropy_analytic =
                        entropy(eigenvalues_2x2(reduced_density(dec))).entropy;
                } catch (const StructureError&) {
                }
                row.entropy = std::isnan(row.entropy_analytic) ? row.entropy_gram
                                                               : row.entropy_analytic;
            } catch (const DegenerateStateError& e) {
                // No post-measurement state exists; report zero entanglement.
                row.probability = e.norm2;
                row.entropy = row.entropy_gram = 0.0;
            }
            rows[cell * outcomes.size() + o] = std::move(row);
        }
    };

    if (threads <= 1 || cells <= 1) {
        for (int c = 0; c < cells; ++c) eval_cell(c);
    } else {
        std::vector<std::thread> pool;
        std::atomic<int> next{0};
        int workers = std::min(threads, cells);
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (int c = next.fetch_add(1); c < cells; c = next.fetch_add(1)) eval_cell(c);
            });
        }
        for (auto& t : pool) t.join();
    }
    return rows;
}

}  // namespace catqed
