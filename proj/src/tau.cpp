#include "taub/tau.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "taub/errors.hpp"
#include "taub/parallel.hpp"
#include "taub/special.hpp"

namespace taub {
namespace {

using LogWeight = std::optional<Complex>;

// Sum of log G over the arguments, or nullopt if one of them is a zero of G.
LogWeight sum_log_g(std::initializer_list<Complex> args) {
    Complex total = 0.0;
    for (const Complex z : args) {
        if (is_barnes_zero(z)) return std::nullopt;
        total += log_barnes_g(z);
    }
    return total;
}

Complex denominator_log_g(std::initializer_list<Complex> args, const char* what) {
    Complex total = 0.0;
    for (const Complex z : args) {
        if (is_barnes_zero(z)) throw PoleError(std::string(what) + ": pole from a vanishing denominator");
        total += log_barnes_g(z);
    }
    return total;
}

struct SideSum {
    Complex value;
    double tail = 0.0;
    double truncation = 0.0;
};

std::vector<BlockSeries> mode_series(const Momenta& momenta, Complex sigma, int n_window, int order,
                                     const std::vector<bool>& needed) {
    return parallel_map(needed.size(), [&](std::size_t i) {
        if (!needed[i]) return BlockSeries{};
        const int n = static_cast<int>(i) - n_window;
        return block_series(momenta, sigma + static_cast<double>(n), order);
    });
}

SideSum sum_modes(const std::vector<LogWeight>& weights, const std::vector<BlockSeries>& series, Complex t,
                  int winding, const TauOptions& options) {
    if (std::abs(t) > options.block.radius) {
        throw DomainError("tau: |t| = " + std::to_string(std::abs(t)) + " exceeds the block radius");
    }
    if (t == Complex(0.0)) throw DomainError("tau: t = 0 is a branch point");
    const std::size_t count = weights.size();
    std::vector<Complex> terms(count, 0.0);
    std::vector<double> weighted_truncation(count, 0.0);
    for (std::size_t i = 0; i < count; ++i) {
        if (!weights[i]) continue;
        const BlockValue block = block_components(series[i], t, winding, options.block);
        terms[i] = std::exp(*weights[i] + block.log_prefactor) * block.polynomial;
        weighted_truncation[i] = std::abs(terms[i]) * block.truncation_estimate;
    }
    SideSum out;
    out.value = pairwise_sum(terms);
    const double size = std::abs(out.value);
    const double edge = std::max(std::abs(terms.front()), std::abs(terms.back()));
    const double truncation = pairwise_sum(weighted_truncation);
    if (size == 0.0) {
        out.tail = edge == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
        out.truncation = truncation == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    } else {
        out.tail = edge / size;
        out.truncation = truncation / size;
    }
    if (!(out.truncation <= options.block.tolerance)) {
        throw ConvergenceError("tau: block truncation estimate " + std::to_string(out.truncation) +
                               " exceeds the tolerance budget");
    }
    if (!(out.tail <= options.tail_budget)) {
        throw TruncationError("tau: Fourier tail estimate " + std::to_string(out.tail) +
                              " exceeds the budget at n_window = " + std::to_string(options.n_window));
    }
    return out;
}

std::vector<LogWeight> fourier_weights(const Momenta& momenta, Complex sigma, Complex twist, int n_window,
                                       Complex log_normalization) {
    if (twist == Complex(0.0)) throw DomainError("tau: zero twist");
    const Complex log_s = std::log(twist);
    std::vector<LogWeight> out;
    for (int n = -n_window; n <= n_window; ++n) {
        const LogWeight c = log_structure_constant(momenta, sigma + static_cast<double>(n));
        out.push_back(c ? LogWeight(*c + static_cast<double>(n) * log_s - log_normalization) : std::nullopt);
    }
    return out;
}

std::vector<bool> any_needed(const std::vector<LogWeight>& a, const std::vector<LogWeight>& b) {
    std::vector<bool> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i].has_value() || (!b.empty() && b[i].has_value());
    return out;
}

Complex required_log_c(const Momenta& momenta, Complex sigma) {
    const LogWeight c = log_structure_constant(momenta, sigma);
    if (!c) throw PoleError("tau_normalized: the structure constant vanishes at sigma");
    return *c;
}

TauEvaluation combine(const SideSum& a, const SideSum& b, Complex prefactor, const TauOptions& options) {
    return {prefactor * a.value * b.value, options.n_window, options.block_order, std::max(a.tail, b.tail),
            a.truncation + b.truncation};
}

}  // namespace

std::optional<Complex> log_structure_constant(const Momenta& m, Complex sigma) {
    const Complex denominator =
        denominator_log_g({1.0 + 2.0 * sigma, 1.0 - 2.0 * sigma, 1.0 + 2.0 * m.zero, 1.0 + 2.0 * m.t,
                           1.0 + 2.0 * m.one, 1.0 + 2.0 * m.infinity},
                          "structure constant");
    const LogWeight numerator = sum_log_g({
        1.0 + m.t + m.zero + sigma, 1.0 + m.t + m.zero - sigma, 1.0 + m.t - m.zero + sigma,
        1.0 + m.t - m.zero - sigma, 1.0 + m.one + m.infinity + sigma, 1.0 + m.one + m.infinity - sigma,
        1.0 + m.one - m.infinity + sigma, 1.0 + m.one - m.infinity - sigma,
    });
    if (!numerator) return std::nullopt;
    return *numerator - denominator;
}

Complex structure_constant(const Momenta& momenta, Complex sigma) {
    const LogWeight c = log_structure_constant(momenta, sigma);
    return c ? std::exp(*c) : Complex(0.0);
}

std::optional<Complex> log_fusion_weight(Complex a, Complex b, Complex c) {
    const Complex denominator = denominator_log_g(
        {1.0 + 2.0 * a, 1.0 - 2.0 * a, 1.0 + 2.0 * b, 1.0 - 2.0 * b, 1.0 + 2.0 * c, 1.0 - 2.0 * c},
        "fusion weight");
    const LogWeight numerator = sum_log_g({
        1.0 + a + b + c, 1.0 + a + b - c, 1.0 + a - b + c, 1.0 + a - b - c,
        1.0 - a + b + c, 1.0 - a + b - c, 1.0 - a - b + c, 1.0 - a - b - c,
    });
    if (!numerator) return std::nullopt;
    return *numerator - denominator;
}

Complex fusion_weight(Complex a, Complex b, Complex c) {
    const LogWeight w = log_fusion_weight(a, b, c);
    return w ? std::exp(*w) : Complex(0.0);
}

TauEvaluation tau_series(const MonodromyPoint& point, Complex t, const TauOptions& options, int winding) {
    const auto weights = fourier_weights(point.momenta, point.sigma, point.twist, options.n_window, 0.0);
    const auto series =
        mode_series(point.momenta, point.sigma, options.n_window, options.block_order, any_needed(weights, {}));
    const SideSum side = sum_modes(weights, series, t, winding, options);
    return {side.value, options.n_window, options.block_order, side.tail, side.truncation};
}

TauEvaluation tau_normalized(const MonodromyPoint& point, Complex t, const TauOptions& options, int winding) {
    const Complex log_c0 = required_log_c(point.momenta, point.sigma);
    const auto weights = fourier_weights(point.momenta, point.sigma, point.twist, options.n_window, log_c0);
    const auto series =
        mode_series(point.momenta, point.sigma, options.n_window, options.block_order, any_needed(weights, {}));
    const SideSum side = sum_modes(weights, series, t, winding, options);
    return {side.value, options.n_window, options.block_order, side.tail, side.truncation};
}

TauEvaluation tautau(const MonodromyPoint& point, Complex t, Complex tbar, const TauOptions& options,
                     int winding_t, int winding_tbar) {
    const MonodromyPoint mirror = antiholomorphic_image(point);
    const auto holo = fourier_weights(point.momenta, point.sigma, point.twist, options.n_window, 0.0);
    const auto anti = fourier_weights(mirror.momenta, mirror.sigma, mirror.twist, options.n_window, 0.0);
    // Blocks are even in every momentum, so both factors share one set of series.
    const auto series =
        mode_series(point.momenta, point.sigma, options.n_window, options.block_order, any_needed(holo, anti));
    return combine(sum_modes(holo, series, t, winding_t, options),
                   sum_modes(anti, series, tbar, winding_tbar, options), 1.0, options);
}

TauEvaluation tautau_fusion_form(const MonodromyPoint& point, Complex t, Complex tbar,
                                 const TauOptions& options, int winding_t, int winding_tbar) {
    const Momenta& m = point.momenta;
    const MonodromyPoint mirror = antiholomorphic_image_fixed_momenta(point);
    const Complex log_c0 = required_log_c(m, point.sigma);
    const auto holo = fourier_weights(m, point.sigma, point.twist, options.n_window, log_c0);
    const auto anti = fourier_weights(m, point.sigma, mirror.twist, options.n_window, log_c0);
    const auto series =
        mode_series(m, point.sigma, options.n_window, options.block_order, any_needed(holo, anti));
    const Complex prefactor =
        fusion_weight(m.zero, m.t, point.sigma) * fusion_weight(point.sigma, m.one, m.infinity);
    return combine(sum_modes(holo, series, t, winding_t, options),
                   sum_modes(anti, series, tbar, winding_tbar, options), prefactor, options);
}

TauEvaluation tautau_quarter(Complex sigma_zero_t, Complex sigma_one_t, Complex t, Complex tbar, int n_window,
                             int winding_t, int winding_tbar) {
    const std::size_t count = static_cast<std::size_t>(2 * n_window + 1);
    std::vector<Complex> holo(count);
    std::vector<Complex> anti(count);
    for (int n = -n_window; n <= n_window; ++n) {
        const auto i = static_cast<std::size_t>(n + n_window);
        const Complex phase = std::exp(2.0 * pi * I * sigma_one_t * static_cast<double>(n));
        const Complex sigma = sigma_zero_t + static_cast<double>(n);
        holo[i] = phase * quarter_block_reduced(sigma, t, winding_t);
        anti[i] = quarter_block_reduced(sigma, tbar, winding_tbar) / phase;
    }
    const Complex a = pairwise_sum(holo);
    const Complex b = pairwise_sum(anti);
    const double tail = std::max({std::abs(holo.front()) / std::abs(a), std::abs(holo.back()) / std::abs(a),
                                  std::abs(anti.front()) / std::abs(b), std::abs(anti.back()) / std::abs(b)});
    return {a * b, n_window, 0, tail, 0.0};
}

double crossing_identity_residual(const MonodromyPoint& point, Complex t, const TauOptions& options) {
    const Complex tbar = std::conj(t);
    const MonodromyPoint crossed = crossing_braid(point);
    const Complex direct = tautau(point, t, tbar, options).value;
    const Complex swapped = tautau(crossed, 1.0 - t, 1.0 - tbar, options).value;
    return std::abs(swapped - direct) / std::abs(direct);
}

}  // namespace taub
