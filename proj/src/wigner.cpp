#include "catqed/wigner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <thread>
#include <tuple>

namespace catqed {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kResidueLimit = 1e-9;

cx gamma_of(double x, double p) { return cx(x, p) / std::numbers::sqrt2; }

// Exact dyad transform; |K| = (1/pi) exp(-2 |gamma - (a+b)/2|^2) <= 1/pi.
cx dyad_kernel(cx a, cx b, double x, double p) {
    const cx g = gamma_of(x, p);
    const cx expo = -2.0 * std::norm(g) - 0.5 * (std::norm(a) + std::norm(b)) -
                    a * std::conj(b) + 2.0 * std::conj(g) * a + 2.0 * g * std::conj(b);
    return std::exp(expo) / kPi;
}

void check_grid(const PhaseSpaceGrid& g) {
    if (g.nx < 2 || g.np < 2 || g.x_max <= g.x_min || g.p_max <= g.p_min) {
        throw std::invalid_argument("phase-space grid needs increasing ranges and nx, np >= 2");
    }
}

void parallel_rows(int rows, int threads, const std::function<void(int)>& body) {
    if (threads <= 1 || rows <= 1) {
        for (int r = 0; r < rows; ++r) body(r);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    int workers = std::min(threads, rows);
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int r = next.fetch_add(1); r < rows; r = next.fetch_add(1)) body(r);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace

PhaseSpaceGrid PhaseSpaceGrid::wide(double alpha_mag, int n) {
    double r = std::numbers::sqrt2 * std::abs(alpha_mag) + 5.0;
    return PhaseSpaceGrid{-r, r, -r, r, n, n};
}

PhaseSpaceGrid PhaseSpaceGrid::zoom(double half_width, int n) {
    return PhaseSpaceGrid{-half_width, half_width, -half_width, half_width, n, n};
}

cx coherent_dyad_wigner(cx alpha, cx beta, double x, double p) {
    if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()) ||
        !std::isfinite(beta.real()) || !std::isfinite(beta.imag()) || !std::isfinite(x) ||
        !std::isfinite(p)) {
        throw std::domain_error("coherent_dyad_wigner: non-finite input");
    }
    return dyad_kernel(alpha, beta, x, p);
}

WignerField reduced_wigner(const SuperState& state, int mode, const PhaseSpaceGrid& grid,
                           int threads) {
    if (state.num_atoms() != 0 || state.num_modes() != 2) {
        throw ShapeError("reduced_wigner: field-only two-mode state expected");
    }
    if (mode != 1 && mode != 2) throw std::invalid_argument("reduced_wigner: mode must be 1 or 2");
    check_grid(grid);
    const int keep = mode - 1;
    const int traced = 1 - keep;

    struct Pair {
        cx w;  // c_j conj(c_k) <traced_k|traced_j>
        cx a, b;
    };
    const auto& terms = state.terms;
    std::vector<Pair> pairs;
    pairs.reserve(terms.size() * terms.size());
    for (const BasisTerm& tj : terms) {
        for (const BasisTerm& tk : terms) {
            cx w = tj.coeff * std::conj(tk.coeff) *
                   coherent_overlap(tk.fields[traced], tj.fields[traced]);
            pairs.push_back(Pair{w, tj.fields[keep], tk.fields[keep]});
        }
    }

    WignerField field;
    field.grid = grid;
    field.values.assign(static_cast<size_t>(grid.nx) * grid.np, 0.0);
    std::vector<double> row_residue(grid.nx, 0.0);

    parallel_rows(grid.nx, threads, [&](int ix) {
        const double x = grid.x(ix);
        double worst = 0.0;
        for (int jp = 0; jp < grid.np; ++jp) {
            const double p = grid.p(jp);
            cx acc = 0.0;
            for (const Pair& pr : pairs) acc += pr.w * dyad_kernel(pr.a, pr.b, x, p);
            worst = std::max(worst, std::abs(acc.imag()));
            field.at(ix, jp) = acc.real();
        }
        row_residue[ix] = worst;
    });

    double residue = *std::max_element(row_residue.begin(), row_residue.end());
    if (residue > kResidueLimit) {
        throw HermiticityError("reduced_wigner: imaginary residue " + std::to_string(residue));
    }
    return field;
}

double reduced_position_density(const SuperState& state, int mode, double x) {
    if (state.num_atoms() != 0 || state.num_modes() != 2) {
        throw ShapeError("reduced_position_density: field-only two-mode state expected");
    }
    const int keep = mode - 1;
    const int traced = 1 - keep;
    // Integrating the dyad kernel over p leaves a Gaussian in x.
    cx acc = 0.0;
    for (const BasisTerm& tj : state.terms) {
        for (const BasisTerm& tk : state.terms) {
            const cx a = tj.fields[keep];
            const cx bc = std::conj(tk.fields[keep]);
            const cx expo = -x * x - 0.5 * (std::norm(a) + std::norm(bc)) - a * bc +
                            std::numbers::sqrt2 * x * (a + bc) - 0.5 * (bc - a) * (bc - a);
            acc += tj.coeff * std::conj(tk.coeff) *
                   coherent_overlap(tk.fields[traced], tj.fields[traced]) * std::exp(expo);
        }
    }
    return acc.real() / std::sqrt(kPi);
}

namespace {

struct CatSpec {
    cx a;       // components +-a
    double xi;  // relative phase e^{i xi} on |-a>
};

cx overlap(cx u, cx v) {
    return std::exp(-0.5 * std::norm(u) - 0.5 * std::norm(v) + std::conj(u) * v);
}

double cat_norm2(const CatSpec& c) {
    return 2.0 * (1.0 + std::exp(-2.0 * std::norm(c.a)) * std::cos(c.xi));
}

// <C2|C1> for unnormalized cats.
cx cat_cross_overlap(const CatSpec& c1, const CatSpec& c2) {
    const cx e1 = std::polar(1.0, c1.xi);
    const cx e2 = std::polar(1.0, -c2.xi);
    return overlap(c2.a, c1.a) + e1 * overlap(c2.a, -c1.a) + e2 * overlap(-c2.a, c1.a) +
           e1 * e2 * overlap(-c2.a, -c1.a);
}

// Wigner transform of |C1><C2|, written as two cosine groups: the lobe group
// (cos of an argument that is imaginary on the diagonal, i.e. a cosh) and the
// fringe group carrying the relative phases.
cx cross_cat_wigner(const CatSpec& c1, const CatSpec& c2, double x, double p) {
    const cx g = gamma_of(x, p);
    const cx a = c1.a;
    const cx bc = std::conj(c2.a);
    const cx zsum = 2.0 * std::conj(g) * a + 2.0 * g * bc;
    const cx zdiff = 2.0 * std::conj(g) * a - 2.0 * g * bc;
    const double half_diff = 0.5 * (c1.xi - c2.xi);
    const double half_sum = 0.5 * (c1.xi + c2.xi);
    const cx lobe = std::exp(-a * bc) * std::cos(cx(half_diff, 0.0) + cx(0.0, 1.0) * zsum);
    const cx fringe = std::exp(a * bc) * std::cos(cx(half_sum, 0.0) + cx(0.0, 1.0) * zdiff);
    return (2.0 / kPi) * std::exp(-2.0 * std::norm(g)) *
           std::exp(-0.5 * (std::norm(c1.a) + std::norm(c2.a))) *
           std::polar(1.0, half_diff) * (lobe + fringe);
}

double cat_wigner(const CatSpec& c, double x, double p) {
    return cross_cat_wigner(c, c, x, p).real();
}

struct CatSet {
    CatSpec c1, c2, c3, c4;  // A-side mode 1/2, B-side mode 1/2
};

CatSet cat_set(const GeneralCatParams& q) {
    return CatSet{
        CatSpec{q.alpha1 * std::polar(1.0, q.theta1), q.xi1},
        CatSpec{q.alpha2 * std::polar(1.0, q.phi2), q.zeta2},
        CatSpec{q.alpha1 * std::polar(1.0, q.phi1), q.zeta1},
        CatSpec{q.alpha2 * std::polar(1.0, q.theta2), q.xi2},
    };
}

}  // namespace

GeneralCatWigner::GeneralCatWigner(const GeneralCatParams& params) : params_(params) {
    for (double v : {params.theta1, params.theta2, params.phi1, params.phi2, params.xi1,
                     params.xi2, params.zeta1, params.zeta2}) {
        if (!std::isfinite(v)) throw std::domain_error("GeneralCatWigner: non-finite phase");
    }
    const CatSet c = cat_set(params_);
    const cx cross = params_.coeff_A * std::conj(params_.coeff_B) * cat_cross_overlap(c.c1, c.c3) *
                     cat_cross_overlap(c.c2, c.c4);
    nu2_ = (std::norm(params_.coeff_A) * cat_norm2(c.c1) * cat_norm2(c.c2) +
            std::norm(params_.coeff_B) * cat_norm2(c.c3) * cat_norm2(c.c4) + 2.0 * cross.real()) /
           64.0;
    if (nu2_ <= kNullNorm2) throw std::domain_error("GeneralCatWigner: null state");
}

double GeneralCatWigner::evaluate(double x1, double p1, double x2, double p2) const {
    const CatSet c = cat_set(params_);
    const double d1 = std::norm(params_.coeff_A) * cat_wigner(c.c1, x1, p1) *
                      cat_wigner(c.c2, x2, p2);
    const double d2 = std::norm(params_.coeff_B) * cat_wigner(c.c3, x1, p1) *
                      cat_wigner(c.c4, x2, p2);
    const cx od = params_.coeff_A * std::conj(params_.coeff_B) *
                  cross_cat_wigner(c.c1, c.c3, x1, p1) * cross_cat_wigner(c.c2, c.c4, x2, p2);
    return (d1 + d2 + 2.0 * od.real()) / (64.0 * nu2_);
}

WignerField GeneralCatWigner::reduced(int mode, const PhaseSpaceGrid& grid, int threads) const {
    if (mode != 1 && mode != 2) throw std::invalid_argument("reduced: mode must be 1 or 2");
    check_grid(grid);
    const CatSet c = cat_set(params_);
    // Tracing the other mode turns its factor into a norm or a cross overlap.
    const CatSpec& da = (mode == 1) ? c.c1 : c.c2;
    const CatSpec& db = (mode == 1) ? c.c3 : c.c4;
    const double wa = std::norm(params_.coeff_A) * cat_norm2(mode == 1 ? c.c2 : c.c1);
    const double wb = std::norm(params_.coeff_B) * cat_norm2(mode == 1 ? c.c4 : c.c3);
    const cx wod = params_.coeff_A * std::conj(params_.coeff_B) *
                   (mode == 1 ? cat_cross_overlap(c.c2, c.c4) : cat_cross_overlap(c.c1, c.c3));

    WignerField field;
    field.grid = grid;
    field.values.assign(static_cast<size_t>(grid.nx) * grid.np, 0.0);
    parallel_rows(grid.nx, threads, [&](int ix) {
        const double x = grid.x(ix);
        for (int jp = 0; jp < grid.np; ++jp) {
            const double p = grid.p(jp);
            const cx od = wod * cross_cat_wigner(da, db, x, p);
            field.at(ix, jp) = (wa * cat_wigner(da, x, p) + wb * cat_wigner(db, x, p) +
                                2.0 * od.real()) /
                               (64.0 * nu2_);
        }
    });
    return field;
}

SuperState GeneralCatWigner::state() const {
    const CatSet c = cat_set(params_);
    auto cat_state = [](const CatSpec& spec) {
        return sum(field_term(1.0, {spec.a}), field_term(std::polar(1.0, spec.xi), {-spec.a}));
    };
    SuperState a = scaled(tensor_fields(cat_state(c.c1), cat_state(c.c2)), params_.coeff_A / 8.0);
    SuperState b = scaled(tensor_fields(cat_state(c.c3), cat_state(c.c4)), params_.coeff_B / 8.0);
    return sum(a, b);
}

GeneralCatParams pi_half_params(const MeasurementOutcome& outcome, cx alpha1, cx alpha2) {
    const bool s_plus = outcome.a2 == Level::g;
    const bool t_plus = outcome.a3 == Level::g;
    const double block = outcome.a1 == Level::g ? -1.0 : 1.0;
    const double half = kPi / 2.0, three_half = 3.0 * kPi / 2.0;
    GeneralCatParams q;
    q.alpha1 = alpha1;
    q.alpha2 = alpha2;
    q.theta1 = 0.0;
    q.xi1 = s_plus ? half : three_half;
    q.phi2 = half;
    q.zeta2 = t_plus ? three_half : half;
    q.phi1 = half;
    q.zeta1 = s_plus ? three_half : half;
    q.theta2 = 0.0;
    q.xi2 = t_plus ? half : three_half;
    q.coeff_A = s_plus ? cx(0.0, -1.0) : cx(0.0, 1.0);
    q.coeff_B = block * (t_plus ? cx(0.0, -1.0) : cx(0.0, 1.0));
    return q;
}

double field_integral(const WignerField& f) {
    double acc = 0.0;
    for (double v : f.values) acc += v;
    return acc * f.grid.dx() * f.grid.dp();
}

double field_min(const WignerField& f) {
    return *std::min_element(f.values.begin(), f.values.end());
}

double field_max(const WignerField& f) {
    return *std::max_element(f.values.begin(), f.values.end());
}

double negativity_volume(const WignerField& f) {
    double acc = 0.0;
    for (double v : f.values) {
        if (v < 0.0) acc -= v;
    }
    return acc * f.grid.dx() * f.grid.dp();
}

std::vector<std::pair<double, double>> lobe_positions(const WignerField& f) {
    // Convolve with the vacuum Gaussian exp(-x^2-p^2) (separable) so that
    // rapidly oscillating interference cancels and only coherent lobes keep
    // their maxima; this is the Husimi smoothing of the field.
    const int nx = f.grid.nx, np = f.grid.np;
    auto kernel_1d = [](double step) {
        const int half = std::max(1, static_cast<int>(std::ceil(4.5 / step)));
        std::vector<double> k(2 * half + 1);
        double sum = 0.0;
        for (int i = -half; i <= half; ++i) {
            k[i + half] = std::exp(-(i * step) * (i * step));
            sum += k[i + half];
        }
        for (double& v : k) v /= sum;
        return k;
    };
    const std::vector<double> kx = kernel_1d(f.grid.dx());
    const std::vector<double> kp = kernel_1d(f.grid.dp());
    const int hx = (static_cast<int>(kx.size()) - 1) / 2;
    const int hp = (static_cast<int>(kp.size()) - 1) / 2;

    std::vector<double> tmp(f.values.size(), 0.0), smooth(f.values.size(), 0.0);
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < np; ++j) {
            double acc = 0.0;
            for (int t = -hp; t <= hp; ++t) {
                int jj = j + t;
                if (jj >= 0 && jj < np) acc += kp[t + hp] * f.at(i, jj);
            }
            tmp[static_cast<size_t>(i) * np + j] = acc;
        }
    }
    for (int j = 0; j < np; ++j) {
        for (int i = 0; i < nx; ++i) {
            double acc = 0.0;
            for (int t = -hx; t <= hx; ++t) {
                int ii = i + t;
                if (ii >= 0 && ii < nx) acc += kx[t + hx] * tmp[static_cast<size_t>(ii) * np + j];
            }
            smooth[static_cast<size_t>(i) * np + j] = acc;
        }
    }

    const double cutoff = 0.5 * *std::max_element(smooth.begin(), smooth.end());
    std::vector<std::tuple<double, double, double>> peaks;  // (value, x, p)
    for (int i = 1; i + 1 < nx; ++i) {
        for (int j = 1; j + 1 < np; ++j) {
            const double v = smooth[static_cast<size_t>(i) * np + j];
            if (v < cutoff) continue;
            bool is_max = true;
            for (int di = -1; di <= 1 && is_max; ++di) {
                for (int dj = -1; dj <= 1; ++dj) {
                    if (di == 0 && dj == 0) continue;
                    if (smooth[static_cast<size_t>(i + di) * np + (j + dj)] > v) {
                        is_max = false;
                        break;
                    }
                }
            }
            if (is_max) peaks.emplace_back(v, f.grid.x(i), f.grid.p(j));
        }
    }
    std::sort(peaks.rbegin(), peaks.rend());
    std::vector<std::pair<double, double>> out;
    out.reserve(peaks.size());
    for (const auto& [v, x, p] : peaks) out.emplace_back(x, p);
    return out;
}

}  // namespace catqed
