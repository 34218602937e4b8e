#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "taub/blocks.hpp"
#include "taub/errors.hpp"
#include "taub/special.hpp"
#include "virasoro_oracle.hpp"

using namespace taub;
using taub::testing::relative_error;
using taub::testing::Sampler;

namespace {

Momenta charge_neutral(Sampler& rng) {
    const Complex a = rng.complex_box(0.05, 0.4, 0.1);
    const Complex b = rng.complex_box(0.05, 0.4, 0.1);
    const Complex c = rng.complex_box(0.05, 0.4, 0.1);
    return {a, b, c, -a - b - c};
}

}  // namespace

TEST_CASE("partition counts") {
    CHECK(partition_count(0) == 1);
    CHECK(partition_count(5) == 7);
    CHECK(partition_count(20) == 627);
}

TEST_CASE("leading normalization and prefactor exponent") {
    const Momenta m{0.21, 0.13, 0.37, 0.29};
    const Complex sigma{0.31, 0.04};
    const BlockSeries s = block_series(m, sigma, 6);
    CHECK(s.coefficients.size() == 7);
    CHECK(s.coefficients[0] == Complex(1.0));
    CHECK(std::abs(s.leading_exponent - (sigma * sigma - m.zero * m.zero - m.t * m.t)) < 1e-15);

    const Momenta flat{0.3, 0.3, 0.2, 0.2};
    const BlockSeries zero_order = block_series(flat, 0.3 * std::sqrt(2.0), 0);
    CHECK(std::abs(zero_order.leading_exponent) < 1e-15);
    CHECK(std::abs(block_eval(zero_order, 0.0).value - 1.0) < 1e-15);
}

TEST_CASE("level-one coefficient") {
    Sampler rng(21);
    for (int i = 0; i < 10; ++i) {
        const Momenta m = rng.complex_momenta();
        const Complex sigma = rng.complex_box(0.05, 0.45, 0.1);
        const Complex s2 = sigma * sigma;
        const Complex expected = (s2 + m.t * m.t - m.zero * m.zero) * (s2 + m.one * m.one - m.infinity * m.infinity) /
                                 (2.0 * s2);
        CHECK(relative_error(block_series(m, sigma, 1).coefficients[1], expected) < 1e-12);
    }
}

TEST_CASE("low-level coefficients agree with the Verma-module Gram oracle") {
    Sampler rng(1234);
    for (int draw = 0; draw < 20; ++draw) {
        const Momenta m = rng.complex_momenta(0.05, 0.45, 0.2);
        const Complex sigma = rng.complex_box(0.05, 0.45, 0.2);
        const BlockSeries s = block_series(m, sigma, 3);
        taub::testing::VirasoroOracle oracle(sigma * sigma);
        for (int level = 1; level <= 3; ++level) {
            const Complex expected = oracle.block_coefficient(level, m.zero * m.zero, m.t * m.t, m.one * m.one,
                                                              m.infinity * m.infinity);
            CHECK(std::abs(s.coefficients[static_cast<std::size_t>(level)] - expected) <
                  1e-10 * std::max(1.0, std::abs(expected)));
        }
    }
}

TEST_CASE("internal momentum parity is exact") {
    const Momenta m{{0.21, 0.05}, 0.13, {0.37, -0.02}, 0.29};
    const Complex sigma{0.27, 0.11};
    const BlockSeries plus = block_series(m, sigma, 12);
    const BlockSeries minus = block_series(m, -sigma, 12);
    for (std::size_t k = 0; k < plus.coefficients.size(); ++k) CHECK(plus.coefficients[k] == minus.coefficients[k]);
}

TEST_CASE("external momentum sign flips leave coefficients unchanged") {
    const Momenta m{{0.21, 0.05}, 0.13, {0.37, -0.02}, 0.29};
    const Complex sigma{0.27, 0.11};
    const BlockSeries base = block_series(m, sigma, 10);
    for (int which = 0; which < 4; ++which) {
        Momenta flipped = m;
        Complex* slots[] = {&flipped.zero, &flipped.t, &flipped.one, &flipped.infinity};
        *slots[which] = -*slots[which];
        const BlockSeries other = block_series(flipped, sigma, 10);
        for (std::size_t k = 0; k < base.coefficients.size(); ++k) {
            CHECK(std::abs(other.coefficients[k] - base.coefficients[k]) < 1e-12 * std::max(1.0, std::abs(base.coefficients[k])));
        }
    }
}

TEST_CASE("charge-conserving momenta give the closed-form block") {
    Sampler rng(5);
    for (int i = 0; i < 10; ++i) {
        const Momenta m = charge_neutral(rng);
        const Complex sigma = m.zero + m.t;
        const BlockSeries s = block_series(m, sigma, 20);
        for (const Complex t : {Complex(0.1), Complex(0.3), Complex(0.2, 0.15)}) {
            const Complex expected = charge_conserving_block(m, t);
            CHECK(relative_error(block_eval(s, t).value, expected) < 1e-10);
        }
    }
    const Momenta m{0.2, 0.15, 0.1, -0.45};
    const BlockSeries s = block_series(m, 0.35, 20);
    const Complex expected = std::pow(0.3, 2.0 * 0.2 * 0.15) * std::pow(0.7, 2.0 * 0.1 * 0.15);
    CHECK(relative_error(block_eval(s, 0.3).value, expected) < 1e-12);
}

TEST_CASE("quarter-momentum block matches the elliptic closed form") {
    const Momenta quarter{0.25, 0.25, 0.25, 0.25};
    for (double sigma = 0.05; sigma < 0.46; sigma += 0.1) {
        const BlockSeries s = block_series(quarter, sigma, 20);
        for (const Complex t : {Complex(0.1), Complex(0.2), Complex(0.3), Complex(0.2, -0.2)}) {
            CHECK(relative_error(block_eval(s, t).value, quarter_block(sigma, t)) < 1e-8);
        }
    }
}

TEST_CASE("nome resummation") {
    const BlockSeries quarter = block_series({0.25, 0.25, 0.25, 0.25}, {0.31, 0.07}, 16);
    CHECK(std::abs(quarter.nome_coefficients[0] - 1.0) < 1e-14);
    for (std::size_t k = 1; k < quarter.nome_coefficients.size(); ++k) {
        CHECK(std::abs(quarter.nome_coefficients[k]) < 1e-10);
    }

    Sampler rng(77);
    BlockOptions nome;
    nome.nome_resummation = true;
    for (int i = 0; i < 5; ++i) {
        const Momenta m = rng.complex_momenta(0.05, 0.45, 0.05);
        const BlockSeries s = block_series(m, rng.complex_box(0.1, 0.4, 0.05), 20);
        const Complex t = rng.complex_box(0.1, 0.25, 0.1);
        const int winding = i % 3 - 1;
        CHECK(relative_error(block_eval(s, t, winding, nome).value, block_eval(s, t, winding).value) < 1e-12);
    }

    // At |t| = 0.6 the resummed order-20 value matches order 32 far better
    // than the plain power series does.
    const Momenta m{0.21, 0.13, 0.37, 0.29};
    const Complex t{0.55, 0.2};
    const Complex reference = block_eval(block_series(m, 0.17, 32), t, 0, nome).value;
    const BlockSeries s = block_series(m, 0.17, 20);
    const double resummed = relative_error(block_eval(s, t, 0, nome).value, reference);
    const double plain = relative_error(block_eval(s, t).value, reference);
    CHECK(resummed < 1e-11);
    CHECK(resummed < 1e-3 * plain);
}

TEST_CASE("order doubling bounds the truncation error") {
    const Momenta m{0.21, 0.13, 0.37, 0.29};
    const Complex sigma{0.31, 0.04};
    const BlockValue low = block_eval(block_series(m, sigma, 20), 0.2);
    const BlockValue high = block_eval(block_series(m, sigma, 28), 0.2);
    CHECK(relative_error(low.value, high.value) < 1e-12);
    CHECK(low.truncation_estimate < 1e-10);
}

TEST_CASE("winding continues the leading power") {
    const Momenta m{0.21, 0.13, 0.37, 0.29};
    const Complex sigma{0.31, 0.04};
    const BlockSeries s = block_series(m, sigma, 16);
    const Complex t{0.2, 0.1};
    const Complex ratio = block_eval(s, t, 1).value / block_eval(s, t).value;
    CHECK(relative_error(ratio, std::exp(2.0 * pi * I * s.leading_exponent)) < 1e-12);
}

TEST_CASE("exchange identities") {
    const Momenta symmetric{0.23, 0.23, 0.31, 0.31};
    CHECK(block_braid_identity_residual(symmetric, 0.17, {0.25, 0.1}, BlockIdentity::ExchangePairs) < 1e-14);

    Sampler rng(9);
    for (int i = 0; i < 5; ++i) {
        const Momenta m = rng.complex_momenta();
        const Complex sigma = rng.complex_box(0.05, 0.45, 0.1);
        CHECK(block_braid_identity_residual(m, sigma, 0.2, BlockIdentity::ExchangeOneInfinity) < 1e-8);
        CHECK(block_braid_identity_residual(m, sigma, {0.25, 0.1}, BlockIdentity::ExchangePairs) < 1e-8);
    }
}

TEST_CASE("degenerate internal momenta and domain limits") {
    const Momenta m{0.21, 0.13, 0.37, 0.29};
    CHECK_THROWS_AS(block_series(m, 0.5, 4), DegenerateKernelError);
    CHECK_THROWS_AS(block_series(m, 1.0, 4), DegenerateKernelError);
    CHECK_NOTHROW(block_series(m, 1.0, 2));
    const BlockSeries s = block_series(m, 0.3, 10);
    CHECK_THROWS_AS(block_eval(s, 0.8), DomainError);
    BlockOptions strict;
    strict.tolerance = 1e-12;
    CHECK_THROWS_AS(block_eval(s, 0.6, 0, strict), ConvergenceError);
}
