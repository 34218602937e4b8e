#include "taub/blocks.hpp"

#include <cmath>
#include <memory>
#include <mutex>
#include <string>

#include "taub/errors.hpp"
#include "taub/special.hpp"

namespace taub {
namespace {

struct Partition {
    std::vector<int> rows;     // nonincreasing row lengths
    std::vector<int> columns;  // conjugate partition
};

using PartitionList = std::vector<Partition>;

void append_partitions(int remaining, int max_part, std::vector<int>& prefix, PartitionList& out) {
    if (remaining == 0) {
        Partition p;
        p.rows = prefix;
        if (!prefix.empty()) {
            p.columns.assign(static_cast<std::size_t>(prefix.front()), 0);
            for (int row : prefix) {
                for (int j = 0; j < row; ++j) ++p.columns[static_cast<std::size_t>(j)];
            }
        }
        out.push_back(std::move(p));
        return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
        prefix.push_back(part);
        append_partitions(remaining - part, part, prefix, out);
        prefix.pop_back();
    }
}

// Partitions of each size, generated once and shared between threads. The
// lists are heap-allocated so references stay valid as the table grows.
class PartitionTable {
public:
    const PartitionList& of_size(int n) {
        std::lock_guard<std::mutex> lock(mutex_);
        while (static_cast<int>(lists_.size()) <= n) {
            auto list = std::make_unique<PartitionList>();
            std::vector<int> prefix;
            const int size = static_cast<int>(lists_.size());
            append_partitions(size, size, prefix, *list);
            lists_.push_back(std::move(list));
        }
        return *lists_[static_cast<std::size_t>(n)];
    }

private:
    std::mutex mutex_;
    std::vector<std::unique_ptr<PartitionList>> lists_;
};

PartitionTable& partition_table() {
    static PartitionTable table;
    return table;
}

int row_or_zero(const std::vector<int>& rows, std::size_t i) {
    return i < rows.size() ? rows[i] : 0;
}

// Product over boxes of content-dependent numerators divided by squared hooks.
Complex diagonal_weight(const Partition& p, const std::vector<Complex>& by_content, int offset) {
    Complex w = 1.0;
    for (std::size_t i = 0; i < p.rows.size(); ++i) {
        for (int j = 0; j < p.rows[i]; ++j) {
            const int ii = static_cast<int>(i);
            const int hook = p.rows[i] + p.columns[static_cast<std::size_t>(j)] - ii - j - 1;
            w *= by_content[static_cast<std::size_t>(ii - j + offset)] /
                 static_cast<double>(hook * hook);
        }
    }
    return w;
}

std::string describe(Complex z) {
    return "(" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")";
}

using Series = std::vector<Complex>;

Series multiply(const Series& a, const Series& b) {
    Series out(a.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; i + j < out.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

// f^a for a series with f[0] = 1.
Series power(const Series& f, Complex a) {
    Series out(f.size(), 0.0);
    out[0] = 1.0;
    for (std::size_t n = 1; n < f.size(); ++n) {
        Complex acc = 0.0;
        for (std::size_t k = 1; k <= n; ++k) {
            acc += (a * static_cast<double>(k) - static_cast<double>(n - k)) * f[k] * out[n - k];
        }
        out[n] = acc / static_cast<double>(n);
    }
    return out;
}

// Sum of q^(n^2) over all integers n, and of q^(n (n + 1)) over n >= 0.
Series lattice_theta(std::size_t length, bool shifted) {
    Series out(length, 0.0);
    for (std::size_t n = 0;; ++n) {
        const std::size_t e = shifted ? n * (n + 1) : n * n;
        if (e >= length) break;
        out[e] += (shifted || n == 0) ? 1.0 : 2.0;
    }
    return out;
}

Series nome_expansion(const BlockSeries& series) {
    const std::size_t length = series.coefficients.size();
    const Series theta3 = lattice_theta(length, false);
    const Series theta2_reduced = lattice_theta(length, true);
    // t / (16 q) as a series in q.
    const Series ratio = multiply(power(theta2_reduced, 4.0), power(theta3, -4.0));
    Series t_of_q(length, 0.0);
    for (std::size_t k = 1; k < length; ++k) t_of_q[k] = 16.0 * ratio[k - 1];

    Series composed(length, 0.0);
    for (auto it = series.coefficients.rbegin(); it != series.coefficients.rend(); ++it) {
        composed = multiply(composed, t_of_q);
        composed[0] += *it;
    }
    Series one_minus_t(length, 0.0);
    for (std::size_t k = 0; k < length; ++k) one_minus_t[k] = -t_of_q[k];
    one_minus_t[0] += 1.0;

    Series out = multiply(composed, power(ratio, series.sigma_squared));
    out = multiply(out, power(one_minus_t, series.t_one_power));
    out = multiply(out, power(theta3, series.theta_power));
    double scale = 1.0;
    for (Complex& c : out) {
        c *= scale;
        scale /= 16.0;
    }
    return out;
}

}  // namespace

long long partition_count(int n) {
    return static_cast<long long>(partition_table().of_size(n).size());
}

BlockSeries block_series(const Momenta& momenta, Complex sigma, int order) {
    if (order < 0) throw DomainError("block_series: negative order");
    // The block depends on sigma^2 only; a fixed sign makes the parity exact.
    if (sigma.real() < 0.0 || (sigma.real() == 0.0 && sigma.imag() < 0.0)) sigma = -sigma;

    BlockSeries series;
    series.order = order;
    series.leading_exponent = sigma * sigma - momenta.zero * momenta.zero - momenta.t * momenta.t;
    series.coefficients.assign(static_cast<std::size_t>(order) + 1, 0.0);
    series.coefficients[0] = 1.0;
    series.sigma_squared = sigma * sigma;
    series.zero_t_power = momenta.zero * momenta.zero + momenta.t * momenta.t;
    series.t_one_power = momenta.t * momenta.t + momenta.one * momenta.one;
    series.theta_power = 4.0 * (series.zero_t_power + momenta.one * momenta.one +
                                momenta.infinity * momenta.infinity);
    series.nome_coefficients = {1.0};
    if (order == 0) return series;

    const Complex two_sigma = 2.0 * sigma;
    for (int m = 1 - order; m <= order - 1; ++m) {
        if (std::abs(static_cast<double>(m) - two_sigma) < 1e-8) {
            throw DegenerateKernelError("block_series: degenerate internal momentum " +
                                        describe(sigma));
        }
    }

    const int offset = order;
    const std::size_t width = 2 * static_cast<std::size_t>(order) + 1;
    std::vector<Complex> inv_plus(width), inv_minus(width), content_plus(width), content_minus(width);
    const Complex th0sq = momenta.zero * momenta.zero;
    const Complex thinfsq = momenta.infinity * momenta.infinity;
    for (int m = -order; m <= order; ++m) {
        const auto idx = static_cast<std::size_t>(m + offset);
        const double md = static_cast<double>(m);
        inv_plus[idx] = 1.0 / (md + two_sigma);
        inv_minus[idx] = 1.0 / (md - two_sigma);
        const Complex ap = momenta.t + sigma + md;
        const Complex bp = momenta.one + sigma + md;
        const Complex am = momenta.t - sigma + md;
        const Complex bm = momenta.one - sigma + md;
        content_plus[idx] = (ap * ap - th0sq) * (bp * bp - thinfsq);
        content_minus[idx] = (am * am - th0sq) * (bm * bm - thinfsq);
    }

    std::vector<std::vector<Complex>> weight_plus(static_cast<std::size_t>(order) + 1);
    std::vector<std::vector<Complex>> weight_minus(static_cast<std::size_t>(order) + 1);
    for (int n = 0; n <= order; ++n) {
        for (const Partition& p : partition_table().of_size(n)) {
            weight_plus[static_cast<std::size_t>(n)].push_back(diagonal_weight(p, content_plus, offset));
            weight_minus[static_cast<std::size_t>(n)].push_back(diagonal_weight(p, content_minus, offset));
        }
    }

    std::vector<Complex> instanton(static_cast<std::size_t>(order) + 1, 0.0);
    instanton[0] = 1.0;
    for (int level = 1; level <= order; ++level) {
        Complex total = 0.0;
        for (int left = 0; left <= level; ++left) {
            const PartitionList& lambdas = partition_table().of_size(left);
            const PartitionList& mus = partition_table().of_size(level - left);
            const auto& wl = weight_plus[static_cast<std::size_t>(left)];
            const auto& wm = weight_minus[static_cast<std::size_t>(level - left)];
            for (std::size_t a = 0; a < lambdas.size(); ++a) {
                const Partition& lam = lambdas[a];
                for (std::size_t b = 0; b < mus.size(); ++b) {
                    const Partition& mu = mus[b];
                    Complex cross = 1.0;
                    for (std::size_t i = 0; i < lam.rows.size(); ++i) {
                        const int base = row_or_zero(mu.rows, i) - static_cast<int>(i) - 1 + offset;
                        for (int j = 0; j < lam.rows[i]; ++j) {
                            cross *= inv_plus[static_cast<std::size_t>(
                                lam.columns[static_cast<std::size_t>(j)] + base - j)];
                        }
                    }
                    for (std::size_t i = 0; i < mu.rows.size(); ++i) {
                        const int base = row_or_zero(lam.rows, i) - static_cast<int>(i) - 1 + offset;
                        for (int j = 0; j < mu.rows[i]; ++j) {
                            cross *= inv_minus[static_cast<std::size_t>(
                                mu.columns[static_cast<std::size_t>(j)] + base - j)];
                        }
                    }
                    total += wl[a] * wm[b] * cross * cross;
                }
            }
        }
        instanton[static_cast<std::size_t>(level)] = total;
    }

    // Multiply by the series of (1 - t)^(2 theta_t theta_1).
    const Complex exponent = 2.0 * momenta.t * momenta.one;
    std::vector<Complex> binomial(static_cast<std::size_t>(order) + 1);
    binomial[0] = 1.0;
    for (int k = 1; k <= order; ++k) {
        binomial[static_cast<std::size_t>(k)] =
            binomial[static_cast<std::size_t>(k - 1)] * (static_cast<double>(k - 1) - exponent) /
            static_cast<double>(k);
    }
    for (int k = 0; k <= order; ++k) {
        Complex c = 0.0;
        for (int j = 0; j <= k; ++j) {
            c += instanton[static_cast<std::size_t>(j)] * binomial[static_cast<std::size_t>(k - j)];
        }
        series.coefficients[static_cast<std::size_t>(k)] = c;
    }
    series.nome_coefficients = nome_expansion(series);
    return series;
}

Complex block_polynomial(const BlockSeries& series, Complex t) {
    Complex sum = 0.0;
    for (auto it = series.coefficients.rbegin(); it != series.coefficients.rend(); ++it) {
        sum = sum * t + *it;
    }
    return sum;
}

namespace {

void check_radius(Complex t, const BlockOptions& options) {
    if (std::abs(t) > options.radius) {
        throw DomainError("block_eval: |t| = " + std::to_string(std::abs(t)) +
                          " exceeds the block radius");
    }
}

void check_truncation(const BlockValue& value, const BlockOptions& options) {
    if (!(value.truncation_estimate <= options.tolerance)) {
        throw ConvergenceError("block_eval: last retained term " +
                               std::to_string(value.truncation_estimate) +
                               " exceeds the tolerance budget");
    }
}

BlockValue power_components(const BlockSeries& series, Complex t, Complex log_t) {
    BlockValue out;
    out.polynomial = block_polynomial(series, t);
    if (series.order > 0) {
        const Complex last = series.coefficients.back() * std::pow(t, series.order);
        out.truncation_estimate = std::abs(last) / std::abs(out.polynomial);
    }
    out.log_prefactor = series.leading_exponent * log_t;
    out.value = std::exp(out.log_prefactor) * out.polynomial;
    return out;
}

BlockValue nome_components(const BlockSeries& series, Complex t, Complex log_t, int winding) {
    const EllipticData data = elliptic_data(t, winding);
    BlockValue out;
    const Complex x = 16.0 * data.nome;
    Complex sum = 0.0;
    for (auto it = series.nome_coefficients.rbegin(); it != series.nome_coefficients.rend(); ++it) {
        sum = sum * x + *it;
    }
    out.polynomial = sum;
    if (series.order > 0) {
        const Complex last = series.nome_coefficients.back() * std::pow(x, series.order);
        out.truncation_estimate = std::abs(last) / std::abs(sum);
    }
    out.log_prefactor = series.sigma_squared * (std::log(16.0) + I * pi * data.period) -
                        series.zero_t_power * log_t - series.t_one_power * std::log(1.0 - t) -
                        series.theta_power * std::log(data.theta3_at_zero);
    out.value = std::exp(out.log_prefactor) * out.polynomial;
    return out;
}

}  // namespace

BlockValue block_components(const BlockSeries& series, Complex t, int winding, const BlockOptions& options) {
    if (t == Complex(0.0)) throw DomainError("block_components: t = 0 is a branch point");
    const Complex log_t = std::log(t) + 2.0 * pi * I * static_cast<double>(winding);
    return options.nome_resummation ? nome_components(series, t, log_t, winding)
                                    : power_components(series, t, log_t);
}

BlockValue block_eval_with_log(const BlockSeries& series, Complex t, Complex log_t,
                               const BlockOptions& options) {
    check_radius(t, options);
    if (t == Complex(0.0)) {
        BlockValue out;
        out.polynomial = series.coefficients.front();
        if (series.leading_exponent == Complex(0.0)) {
            out.value = out.polynomial;
        } else if (series.leading_exponent.real() > 0.0) {
            out.value = 0.0;
        } else {
            throw DomainError("block_eval: t = 0 with non-positive leading exponent");
        }
        return out;
    }
    BlockValue out;
    if (options.nome_resummation) {
        // The sheet of the nome follows from how far log_t is from the principal log.
        const double turns = (log_t - std::log(t)).imag() / (2.0 * pi);
        out = nome_components(series, t, log_t, static_cast<int>(std::lround(turns)));
    } else {
        out = power_components(series, t, log_t);
    }
    check_truncation(out, options);
    return out;
}

BlockValue block_eval(const BlockSeries& series, Complex t, int winding, const BlockOptions& options) {
    const Complex log_t =
        t == Complex(0.0) ? Complex(0.0) : std::log(t) + 2.0 * pi * I * static_cast<double>(winding);
    return block_eval_with_log(series, t, log_t, options);
}

Complex charge_conserving_block(const Momenta& momenta, Complex t, int winding) {
    const Complex log_t = std::log(t) + 2.0 * pi * I * static_cast<double>(winding);
    return std::exp(2.0 * momenta.zero * momenta.t * log_t +
                    2.0 * momenta.one * momenta.t * std::log(1.0 - t));
}

Complex quarter_block_reduced(Complex sigma, Complex t, int winding) {
    const EllipticData data = elliptic_data(t, winding);
    const Complex log_t = std::log(t) + 2.0 * pi * I * static_cast<double>(winding);
    return std::exp(-0.125 * (log_t + std::log(1.0 - t)) + I * pi * data.period * sigma * sigma) /
           data.theta3_at_zero;
}

Complex quarter_block(Complex sigma, Complex t, int winding) {
    return std::exp(sigma * sigma * std::log(16.0)) * quarter_block_reduced(sigma, t, winding);
}

double block_braid_identity_residual(const Momenta& momenta, Complex sigma, Complex t,
                                     BlockIdentity which, int order) {
    const Complex thtsq = momenta.t * momenta.t;
    BlockOptions options;
    options.radius = 0.9;
    options.tolerance = 1e-2;
    const BlockSeries direct = block_series(momenta, sigma, order);
    switch (which) {
        case BlockIdentity::ExchangeOneInfinity: {
            const Momenta swapped{momenta.zero, momenta.t, momenta.infinity, momenta.one};
            const BlockSeries other = block_series(swapped, sigma, order);
            const Complex x = t / (t - 1.0);
            const Complex log_x = std::log(t) - std::log(1.0 - t) + I * pi;
            const Complex lhs = block_eval_with_log(direct, x, log_x, options).value;
            const Complex rhs = std::exp(I * pi * direct.leading_exponent + 2.0 * thtsq * std::log(1.0 - t)) *
                                block_eval(other, t, 0, options).value;
            return std::abs(lhs - rhs) / std::abs(rhs);
        }
        case BlockIdentity::ExchangePairs: {
            const Momenta swapped{momenta.t, momenta.zero, momenta.infinity, momenta.one};
            const BlockSeries other = block_series(swapped, sigma, order);
            const Complex lhs = block_eval(other, t, 0, options).value;
            const Complex power = thtsq + momenta.one * momenta.one - momenta.zero * momenta.zero -
                                  momenta.infinity * momenta.infinity;
            const Complex rhs = std::exp(power * std::log(1.0 - t)) * block_eval(direct, t, 0, options).value;
            return std::abs(lhs - rhs) / std::abs(rhs);
        }
    }
    return 0.0;
}

}  // namespace taub
