#include "taub/theories.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "taub/errors.hpp"
#include "taub/monodromy.hpp"
#include "taub/parallel.hpp"
#include "taub/special.hpp"
#include "taub/tau.hpp"

namespace taub {
namespace {

struct Node {
    double x;
    double weight;
};

template <unsigned N>
std::vector<Node> legendre_rule() {
    using Rule = boost::math::quadrature::gauss<double, N>;
    std::vector<Node> out;
    const auto& xs = Rule::abscissa();
    const auto& ws = Rule::weights();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out.push_back({xs[i], ws[i]});
        if (xs[i] != 0.0) out.push_back({-xs[i], ws[i]});
    }
    return out;
}

std::vector<Node> legendre_nodes(int count) {
    switch (count) {
        case 2: return legendre_rule<2>();
        case 3: return legendre_rule<3>();
        case 4: return legendre_rule<4>();
        case 5: return legendre_rule<5>();
        case 6: return legendre_rule<6>();
        case 8: return legendre_rule<8>();
        case 10: return legendre_rule<10>();
        case 12: return legendre_rule<12>();
        case 16: return legendre_rule<16>();
        case 20: return legendre_rule<20>();
        default:
            throw DomainError("quadrature: unsupported node count " + std::to_string(count) +
                              " (use 2-6, 8, 10, 12, 16 or 20)");
    }
}

// Panel edges covering [lo, hi]: a uniform grid of the given width refined by
// the breakpoints that fall inside.
std::vector<double> panel_edges(double lo, double hi, double width, const std::vector<double>& breaks) {
    const int count = std::max(1, static_cast<int>(std::ceil((hi - lo) / width - 1e-12)));
    std::vector<double> edges;
    for (int i = 0; i <= count; ++i) edges.push_back(lo + (hi - lo) * i / count);
    for (double b : breaks) {
        if (b > lo && b < hi) edges.push_back(b);
    }
    std::sort(edges.begin(), edges.end());
    std::vector<double> out;
    for (double e : edges) {
        if (out.empty() || e - out.back() > 1e-13) out.push_back(e);
    }
    out.back() = hi;
    return out;
}

// One integrand value with the block truncation estimate behind it.
struct Sample {
    Complex value;
    double truncation = 0.0;
};

using Integrand = std::function<Sample(double)>;

struct Panel {
    double lo = 0.0;
    double hi = 0.0;
    int depth = 0;
    Complex fine{};
    Complex coarse{};
    double weighted_truncation = 0.0;
    double largest = 0.0;  // largest |integrand| at the nodes
};

// Evaluates the fine and the half-order rule on every panel, with all
// integrand samples in one parallel batch.
void evaluate_panels(const Integrand& f, std::vector<Panel>& panels, const std::vector<Node>& fine_rule,
                     const std::vector<Node>& coarse_rule, double scale, int& evaluations) {
    struct Job {
        std::size_t panel;
        bool coarse;
        double x;
        double weight;
    };
    std::vector<Job> jobs;
    for (std::size_t p = 0; p < panels.size(); ++p) {
        const double mid = 0.5 * (panels[p].lo + panels[p].hi);
        const double half = 0.5 * (panels[p].hi - panels[p].lo);
        for (const Node& n : fine_rule) jobs.push_back({p, false, mid + half * n.x, scale * half * n.weight});
        for (const Node& n : coarse_rule) jobs.push_back({p, true, mid + half * n.x, scale * half * n.weight});
    }
    const std::vector<Sample> samples = parallel_map(jobs.size(), [&](std::size_t i) { return f(jobs[i].x); });
    evaluations += static_cast<int>(jobs.size());
    std::size_t i = 0;
    for (std::size_t p = 0; p < panels.size(); ++p) {
        std::vector<Complex> fine, coarse;
        std::vector<double> truncation;
        for (; i < jobs.size() && jobs[i].panel == p; ++i) {
            const Complex term = jobs[i].weight * samples[i].value;
            if (jobs[i].coarse) {
                coarse.push_back(term);
            } else {
                fine.push_back(term);
                truncation.push_back(std::abs(term) * samples[i].truncation);
                panels[p].largest = std::max(panels[p].largest, std::abs(samples[i].value));
            }
        }
        panels[p].fine = pairwise_sum(fine);
        panels[p].coarse = pairwise_sum(coarse);
        panels[p].weighted_truncation = pairwise_sum(truncation);
    }
}

double relative(double numerator, Complex value) {
    const double size = std::abs(value);
    if (size == 0.0) return numerator == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return numerator / size;
}

// Integral of f over [-L, L], or twice the integral over [0, L] when `even`.
// Panels no wider than the panel width are bisected where the fine and
// half-order rules disagree, and the cutoff L is raised until the integrand at
// the ends is negligible.
CorrelatorValue line_integral(const Integrand& f, const QuadratureOptions& q, bool even,
                              const std::function<std::vector<double>(double)>& breakpoints,
                              const BlockOptions& block) {
    if (!(q.panel_width > 0.0) || q.panel_width > 0.25 + 1e-15) {
        throw DomainError("quadrature: panel width must lie in (0, 0.25]");
    }
    if (q.nodes_per_panel < 4) throw DomainError("quadrature: need at least 4 nodes per panel");
    const std::vector<Node> fine_rule = legendre_nodes(q.nodes_per_panel);
    const std::vector<Node> coarse_rule = legendre_nodes(q.nodes_per_panel / 2);
    const double scale = even ? 2.0 : 1.0;
    for (double cutoff = q.cutoff;; cutoff += 2.0) {
        const double lo = even ? 0.0 : -cutoff;
        const std::vector<double> edges = panel_edges(lo, cutoff, q.panel_width, breakpoints(cutoff));
        std::vector<Panel> panels;
        for (std::size_t i = 0; i + 1 < edges.size(); ++i) panels.push_back({.lo = edges[i], .hi = edges[i + 1]});
        CorrelatorValue out;
        evaluate_panels(f, panels, fine_rule, coarse_rule, scale, out.evaluations);

        double error = 0.0;
        for (;;) {
            std::vector<Complex> values;
            error = 0.0;
            for (const Panel& p : panels) {
                values.push_back(p.fine);
                error += std::abs(p.fine - p.coarse);
            }
            out.value = pairwise_sum(values);
            const double budget = q.tolerance * std::abs(out.value);
            if (error <= budget) break;
            const double share = budget / static_cast<double>(panels.size());
            std::vector<Panel> next;
            std::vector<Panel> fresh;
            for (const Panel& p : panels) {
                if (std::abs(p.fine - p.coarse) > share && p.depth < q.max_depth) {
                    const double mid = 0.5 * (p.lo + p.hi);
                    fresh.push_back({.lo = p.lo, .hi = mid, .depth = p.depth + 1});
                    fresh.push_back({.lo = mid, .hi = p.hi, .depth = p.depth + 1});
                } else {
                    next.push_back(p);
                }
            }
            if (fresh.empty()) {
                throw QuadratureError("quadrature: error estimate " + std::to_string(relative(error, out.value)) +
                                      " above the tolerance at the maximum refinement depth");
            }
            evaluate_panels(f, fresh, fine_rule, coarse_rule, scale, out.evaluations);
            next.insert(next.end(), fresh.begin(), fresh.end());
            std::sort(next.begin(), next.end(), [](const Panel& x, const Panel& y) { return x.lo < y.lo; });
            panels = std::move(next);
        }

        double truncation = 0.0;
        for (const Panel& p : panels) truncation += p.weighted_truncation;
        double edge = panels.back().largest * (panels.back().hi - panels.back().lo);
        if (!even) edge = std::max(edge, panels.front().largest * (panels.front().hi - panels.front().lo));
        out.cutoff = cutoff;
        out.quadrature_error = relative(error, out.value);
        out.tail_estimate = relative(scale * edge, out.value);
        out.block_truncation = relative(truncation, out.value);
        if (!(out.tail_estimate <= q.tail_budget)) {
            if (cutoff + 2.0 <= q.max_cutoff) continue;
            throw QuadratureError("quadrature: integrand at the cutoff " + std::to_string(cutoff) +
                                  " is " + std::to_string(out.tail_estimate) + " of the integral");
        }
        if (!(out.block_truncation <= block.tolerance)) {
            throw ConvergenceError("quadrature: weighted block truncation " +
                                   std::to_string(out.block_truncation) + " exceeds the tolerance");
        }
        return out;
    }
}

void require_radius(Complex t, Complex tbar, const BlockOptions& block) {
    if (std::abs(t) > block.radius || std::abs(tbar) > block.radius) {
        throw DomainError("correlator: |t| or |tbar| exceeds the block radius " + std::to_string(block.radius));
    }
    if (t == Complex(0.0) || tbar == Complex(0.0)) throw DomainError("correlator: t = 0 is a branch point");
}

double require_real(Complex z, const char* what) {
    if (std::abs(z.imag()) > 1e-14) throw DomainError(std::string("correlator: ") + what + " must be real");
    return z.real();
}

// Fusion weights times the two blocks at one internal momentum, as a sample;
// zero when a fusion weight vanishes.
Sample glued_blocks(const CorrelatorSpec& spec, Complex sigma, Complex t, Complex tbar, int wt, int wtb) {
    const Momenta& m = spec.momenta;
    const std::optional<Complex> left = log_fusion_weight(m.zero, m.t, sigma);
    const std::optional<Complex> right = log_fusion_weight(sigma, m.one, m.infinity);
    if (!left || !right) return {0.0, 0.0};
    const BlockSeries series = block_series(m, sigma, spec.block_order);
    const BlockValue holo = block_components(series, t, wt, spec.block);
    const BlockValue anti = block_components(series, tbar, wtb, spec.block);
    const Complex value = std::exp(*left + *right + holo.log_prefactor + anti.log_prefactor) *
                          holo.polynomial * anti.polynomial;
    return {value, holo.truncation_estimate + anti.truncation_estimate};
}

// Internal momenta in [0, cutoff] where a step factor can switch.
std::vector<double> step_breakpoints(const Momenta& m, double cutoff) {
    const double th0 = m.zero.real(), tht = m.t.real(), th1 = m.one.real(), thinf = m.infinity.real();
    std::vector<double> out;
    for (const double base : {th0 + tht, th0 - tht, th1 + thinf, th1 - thinf}) {
        for (const double sign : {1.0, -1.0}) {
            const double r = sign * base;
            for (int k = static_cast<int>(std::floor(-r)); k <= static_cast<int>(std::ceil(cutoff - r)); ++k) {
                const double b = r + k;
                if (b >= 0.0 && b <= cutoff) out.push_back(b);
            }
        }
    }
    return out;
}

int rw_weight(const Momenta& m, double sigma) {
    return fusion_step(m.zero.real(), m.t.real(), sigma) * fusion_step(sigma, m.one.real(), m.infinity.real());
}

bool is_quarter_point(const Momenta& m) {
    for (const Complex th : {m.zero, m.t, m.one, m.infinity}) {
        if (std::abs(std::abs(th.real()) - 0.25) > 1e-14) return false;
    }
    return true;
}

// The fusion weights and blocks have poles at half-integer momenta, cancelled
// only at the quarter point. The integral is undefined when the support of the
// step factors reaches one of them.
void reject_pole_in_support(const Momenta& m, double cutoff) {
    if (is_quarter_point(m)) return;
    const double delta = 1e-9;
    for (int k = 0; k <= static_cast<int>(2.0 * cutoff); ++k) {
        const double s = 0.5 * k;
        if (rw_weight(m, s + delta) == 1 || (k > 0 && rw_weight(m, s - delta) == 1)) {
            throw DomainError("correlator_rw: the step support reaches the pole at sigma = " + std::to_string(s));
        }
    }
}

Complex log_with_winding(Complex z, int winding) { return std::log(z) + 2.0 * pi * I * static_cast<double>(winding); }

// t^(-1/8) (1 - t)^(-1/8) / theta_3 with the nome data for the given winding.
struct QuarterFactor {
    Complex value;
    Complex period;
};

QuarterFactor quarter_factor(Complex t, int winding) {
    const EllipticData d = elliptic_data(t, winding);
    return {std::exp(-0.125 * (log_with_winding(t, winding) + std::log(1.0 - t))) / d.theta3_at_zero, d.period};
}

int mod2(int k) { return ((k % 2) + 2) % 2; }

CorrelatorSpec with_sector(CorrelatorSpec spec, int sector, int sector_sign) {
    spec.sector = sector;
    spec.sector_sign = sector_sign;
    return spec;
}

}  // namespace

Complex correlator_gff(const Momenta& momenta, Complex t, Complex tbar, int winding_t, int winding_tbar) {
    if (std::abs(momenta.sum()) > 1e-12) return 0.0;
    return charge_conserving_block(momenta, t, winding_t) * charge_conserving_block(momenta, tbar, winding_tbar);
}

Complex correlator_gff_factorized(const Momenta& momenta, Complex t, Complex tbar, int order) {
    if (std::abs(momenta.sum()) > 1e-12) return 0.0;
    const BlockSeries series = block_series(momenta, momenta.zero + momenta.t, order);
    BlockOptions options;
    options.radius = 0.75;
    options.nome_resummation = true;
    return block_eval(series, t, 0, options).value * block_eval(series, tbar, 0, options).value;
}

Complex correlator_gff_riccati(const Momenta& momenta, Complex t, Complex tbar) {
    if (std::abs(momenta.sum()) > 1e-12) return 0.0;
    const MonodromyPoint riccati{momenta, momenta.zero + momenta.t, 1.0};
    return tautau(riccati, t, tbar).value;
}

CorrelatorValue correlator_rw(const CorrelatorSpec& spec, Complex t, Complex tbar, int winding_t,
                              int winding_tbar) {
    require_radius(t, tbar, spec.block);
    const Momenta& m = spec.momenta;
    for (const Complex th : {m.zero, m.t, m.one, m.infinity}) require_real(th, "momenta");
    reject_pole_in_support(m, spec.quadrature.max_cutoff);
    const Integrand f = [&](double sigma) -> Sample {
        if (rw_weight(m, sigma) == 0) return {0.0, 0.0};
        return glued_blocks(spec, sigma, t, tbar, winding_t, winding_tbar);
    };
    return line_integral(
        f, spec.quadrature, true, [&](double cutoff) { return step_breakpoints(m, cutoff); }, spec.block);
}

Complex rw_quarter_closed_form(Complex t, Complex tbar, int winding_t, int winding_tbar) {
    const QuarterFactor a = quarter_factor(t, winding_t);
    const QuarterFactor b = quarter_factor(tbar, winding_tbar);
    return a.value * b.value / std::sqrt(-I * (a.period + b.period));
}

CorrelatorValue correlator_at(const CorrelatorSpec& spec, Complex t, Complex tbar, int winding_t,
                              int winding_tbar) {
    const double scale = spec.lattice_scale;
    if (!(scale > 0.0)) throw DomainError("correlator_at: the lattice scale N must be positive");
    const int e = mod2(spec.sector);
    const int e_sign = mod2(spec.sector_sign);
    const int k_max = spec.lattice_cutoff;
    CorrelatorValue out;

    if (spec.route == LatticeRoute::TauAverage) {
        const double rounded = std::round(scale);
        if (std::abs(scale - rounded) > 1e-12 || rounded < 1.0) {
            throw DomainError("correlator_at: the tau-average route needs an integer N");
        }
        const int p = 2 * static_cast<int>(rounded);
        std::vector<TauEvaluation> cells = parallel_map(static_cast<std::size_t>(p * p), [&](std::size_t i) {
            const int a = static_cast<int>(i) / p;
            const int c = static_cast<int>(i) % p;
            return tautau_quarter((a + 0.5 * e) / p, (c + 0.5 * e_sign) / p, t, tbar, k_max, winding_t,
                                  winding_tbar);
        });
        std::vector<Complex> values;
        for (const TauEvaluation& cell : cells) {
            values.push_back(cell.value);
            out.tail_estimate = std::max(out.tail_estimate, cell.tail_estimate);
        }
        out.value = pairwise_sum(values) / static_cast<double>(p);
        out.evaluations = p * p;
    } else {
        const QuarterFactor a = quarter_factor(t, winding_t);
        const QuarterFactor b = quarter_factor(tbar, winding_tbar);
        std::vector<Complex> terms;
        double edge = 0.0;
        // Both Gaussian arguments stay below k_max in size.
        const int n_max = static_cast<int>(std::ceil(2.0 * scale * k_max));
        const int w_max = static_cast<int>(std::ceil(k_max / scale));
        for (int n = -n_max; n <= n_max; ++n) {
            for (int k = -w_max; k <= w_max; ++k) {
                const double u = (n + 0.5 * e) / (2.0 * scale);
                const double left = scale * k + u;
                const double right = scale * k - u;
                const double sign = (e_sign * k) % 2 == 0 ? 1.0 : -1.0;
                const Complex term =
                    sign * std::exp(I * pi * (a.period * left * left + b.period * right * right));
                terms.push_back(term);
                if (std::abs(n) == n_max || std::abs(k) == w_max) edge = std::max(edge, std::abs(term));
            }
        }
        const Complex sum = pairwise_sum(terms);
        out.value = a.value * b.value * sum;
        out.tail_estimate = relative(edge, sum);
        out.evaluations = static_cast<int>(terms.size());
    }
    if (!(out.tail_estimate <= spec.lattice_budget)) {
        throw TruncationError("correlator_at: lattice tail " + std::to_string(out.tail_estimate) +
                              " exceeds the budget at cutoff " + std::to_string(k_max));
    }
    return out;
}

Complex at_free_orbit(Complex t, Complex tbar, int winding_t, int winding_tbar) {
    return tautau_quarter(0.0, 0.0, t, tbar, 8, winding_t, winding_tbar).value;
}

CorrelatorValue correlator_al(const CorrelatorSpec& spec, Complex t, Complex tbar, int winding_t,
                              int winding_tbar) {
    require_radius(t, tbar, spec.block);
    const double h = spec.contour_height;
    if (h == 0.0) throw DomainError("correlator_al: the contour must be shifted off the real axis");
    if (std::abs(2.0 * h - std::round(2.0 * h)) < 1e-8) {
        throw DomainError("correlator_al: the contour height must avoid half-integers");
    }
    const Momenta& m = spec.momenta;
    auto f = [&](double x) { return glued_blocks(spec, Complex(x, h), t, tbar, winding_t, winding_tbar); };
    const auto no_breaks = [](double) { return std::vector<double>{}; };

    // For real momenta and tbar = conj(t) the integrand at -x + ih is the
    // conjugate of the one at x + ih, so the half line suffices.
    const bool real_momenta = std::abs(m.zero.imag()) + std::abs(m.t.imag()) + std::abs(m.one.imag()) +
                                  std::abs(m.infinity.imag()) == 0.0;
    if (real_momenta && tbar == std::conj(t) && winding_t == 0 && winding_tbar == 0) {
        CorrelatorValue half = line_integral(f, spec.quadrature, true, no_breaks, spec.block);
        half.value = half.value.real();
        return half;
    }
    return line_integral(f, spec.quadrature, false, no_breaks, spec.block);
}

CorrelatorValue correlator(const CorrelatorSpec& spec, Complex t, Complex tbar, int winding_t, int winding_tbar) {
    switch (spec.theory) {
        case Theory::FreeField: {
            CorrelatorValue out;
            out.value = correlator_gff(spec.momenta, t, tbar, winding_t, winding_tbar);
            out.evaluations = 1;
            return out;
        }
        case Theory::RunkelWatts: return correlator_rw(spec, t, tbar, winding_t, winding_tbar);
        case Theory::AshkinTeller: return correlator_at(spec, t, tbar, winding_t, winding_tbar);
        case Theory::AnalyticLiouville: return correlator_al(spec, t, tbar, winding_t, winding_tbar);
    }
    throw DomainError("correlator: unknown theory");
}

Complex contour_residue(const std::function<Complex(Complex)>& f, Complex center, double radius, int points) {
    if (points < 1 || !(radius > 0.0)) throw DomainError("contour_residue: need points >= 1 and radius > 0");
    const std::vector<Complex> terms = parallel_map(static_cast<std::size_t>(points), [&](std::size_t j) {
        const Complex offset = std::polar(radius, 2.0 * pi * static_cast<double>(j) / points);
        return f(center + offset) * offset;
    });
    return pairwise_sum(terms) / static_cast<double>(points);
}

ResidueSum residue_sum_check(const CorrelatorSpec& spec, Complex t, double center, double radius, int points) {
    const Complex tbar = std::conj(t);
    require_radius(t, tbar, spec.block);
    if (!(radius > 0.0 && radius < 0.25)) throw DomainError("residue_sum_check: radius must lie in (0, 1/4)");
    ResidueSum out;
    std::vector<Complex> residues;
    for (int n = -spec.n_window; n <= spec.n_window; ++n) {
        const Complex r = contour_residue(
            [&](Complex sigma) { return glued_blocks(spec, sigma, t, tbar, 0, 0).value; },
            center + static_cast<double>(n), radius, points);
        residues.push_back(r);
        out.largest = std::max(out.largest, std::abs(r));
    }
    out.total = pairwise_sum(residues);
    return out;
}

double crossing_residual(const CorrelatorSpec& spec, Complex t) {
    CorrelatorSpec crossed = spec;
    crossed.momenta = spec.momenta.crossed();
    if (spec.theory == Theory::AshkinTeller) crossed = with_sector(crossed, spec.sector_sign, spec.sector);
    const Complex direct = correlator(spec, t, std::conj(t)).value;
    const Complex swapped = correlator(crossed, 1.0 - t, 1.0 - std::conj(t)).value;
    return std::abs(swapped - direct) / std::abs(direct);
}

double monodromy_residual(const CorrelatorSpec& spec, Complex t) {
    const Complex direct = correlator(spec, t, std::conj(t)).value;
    const Complex turned = correlator(spec, t, std::conj(t), 1, -1).value;
    return std::abs(turned - direct) / std::abs(direct);
}

double at_sector_permutation_residual(double lattice_scale, Complex t) {
    CorrelatorSpec spec;
    spec.theory = Theory::AshkinTeller;
    spec.lattice_scale = lattice_scale;
    const Complex tbar = std::conj(t);
    const Complex x = t / (t - 1.0);
    const double prefactor = std::pow(std::abs(1.0 - t), 0.25);
    double worst = 0.0;
    for (int e = 0; e < 2; ++e) {
        for (int e_sign = 0; e_sign < 2; ++e_sign) {
            const Complex base = correlator_at(with_sector(spec, e, e_sign), t, tbar).value;
            const Complex exchanged = correlator_at(with_sector(spec, e_sign, e), 1.0 - t, 1.0 - tbar).value;
            const Complex sheared = correlator_at(with_sector(spec, e, mod2(e + e_sign)), x, std::conj(x)).value;
            worst = std::max(worst, std::abs(exchanged - base) / std::abs(base));
            worst = std::max(worst, std::abs(sheared - prefactor * base) / std::abs(base));
        }
    }
    return worst;
}

}  // namespace taub
