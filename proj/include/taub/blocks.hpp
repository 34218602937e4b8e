#pragma once

#include <vector>

#include "taub/momenta.hpp"

namespace taub {

/// Truncated s-channel conformal block at central charge one.
///
/// value(t) = t^leading_exponent * sum_k coefficients[k] t^k, with
/// leading_exponent = sigma^2 - theta_0^2 - theta_t^2 and coefficients[0] = 1.
///
/// The same data re-expanded in the elliptic nome q(t):
/// value(t) = (16 q)^sigma_squared t^(-zero_t_power) (1 - t)^(-t_one_power)
///            theta_3(q)^(-theta_power) sum_k nome_coefficients[k] (16 q)^k.
struct BlockSeries {
    Complex leading_exponent;
    std::vector<Complex> coefficients;
    int order = 0;
    Complex sigma_squared;
    Complex zero_t_power;
    Complex t_one_power;
    Complex theta_power;
    std::vector<Complex> nome_coefficients;
};

/// Evaluation controls. `radius` bounds |t|; `tolerance` bounds the size of the
/// last retained term relative to the polynomial sum. With `nome_resummation`
/// the series is summed in the nome q(t) instead of t.
struct BlockOptions {
    double radius = 0.7;
    double tolerance = 1e-3;
    bool nome_resummation = false;
};

/// value = exp(log_prefactor) * polynomial, where the polynomial is the
/// truncated sum in t or in the nome.
struct BlockValue {
    Complex value;
    Complex polynomial;
    Complex log_prefactor;
    double truncation_estimate = 0.0;
};

/// Block coefficients from the pair-of-partitions expansion up to `order`.
/// Throws DegenerateKernelError when 2 sigma is within tolerance of an integer
/// that produces a vanishing denominator at this order.
BlockSeries block_series(const Momenta& momenta, Complex sigma, int order);

/// Evaluates the series with t^a = exp(a (log t + 2 pi i winding)).
BlockValue block_eval(const BlockSeries& series, Complex t, int winding = 0,
                      const BlockOptions& options = {});

/// Evaluates the series with an explicitly supplied logarithm of t, for
/// arguments on or across the principal cut.
BlockValue block_eval_with_log(const BlockSeries& series, Complex t, Complex log_t,
                               const BlockOptions& options = {});

/// Unchecked evaluation: fills every field of BlockValue but leaves the
/// comparison against options.tolerance to the caller. Requires t != 0.
BlockValue block_components(const BlockSeries& series, Complex t, int winding,
                            const BlockOptions& options = {});

/// Sum of the truncated power series without the leading power.
Complex block_polynomial(const BlockSeries& series, Complex t);

/// t^(2 theta_0 theta_t) (1 - t)^(2 theta_1 theta_t): the block for momenta with
/// vanishing total charge at sigma = theta_0 + theta_t.
Complex charge_conserving_block(const Momenta& momenta, Complex t, int winding = 0);

/// Exact block at all four momenta equal to 1/4.
Complex quarter_block(Complex sigma, Complex t, int winding = 0);

/// quarter_block times 16^(-sigma^2), the combination entering lattice sums.
Complex quarter_block_reduced(Complex sigma, Complex t, int winding = 0);

enum class BlockIdentity {
    /// Exchange of the punctures at 1 and infinity, t -> t / (t - 1).
    ExchangeOneInfinity,
    /// Simultaneous exchange of 0 with t and 1 with infinity at fixed t.
    ExchangePairs,
};

/// Relative residual of the chosen exchange identity between two block
/// evaluations at truncation `order`.
double block_braid_identity_residual(const Momenta& momenta, Complex sigma, Complex t,
                                     BlockIdentity which, int order = 24);

/// Number of integer partitions of n (used for cost estimates and tests).
long long partition_count(int n);

}  // namespace taub
