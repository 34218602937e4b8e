#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "taub/errors.hpp"
#include "taub/special.hpp"
#include "taub/tau.hpp"

using namespace taub;
using taub::testing::relative_error;
using taub::testing::Sampler;

namespace {

MonodromyPoint random_point(Sampler& rng) {
    return {rng.real_momenta(0.05, 0.45), rng.complex_box(0.1, 0.4, 0.05),
            std::polar(rng.uniform(0.8, 1.25), rng.uniform(-pi, pi))};
}

// A point with theta_0 = theta_1 whose 1t-channel trace equals its 0t-channel
// trace: p_1t is a Laurent polynomial a s + b + c / s in the twist, so the twist
// solves a quadratic.
MonodromyPoint swap_fixed_point(const Momenta& m, Complex sigma) {
    auto p1t = [&](Complex s) { return traces_from_point({m, sigma, s}).one_t; };
    const Complex f1 = p1t(1.0), f2 = p1t(2.0), fm = p1t(-1.0);
    const Complex a = (f2 - 0.5 * (f1 + fm) - 0.25 * (f1 - fm)) / 1.5;
    const Complex c = 0.5 * (f1 - fm) - a;
    const Complex b = 0.5 * (f1 + fm);
    const Complex target = 2.0 * std::cos(2.0 * pi * sigma);
    const Complex root = std::sqrt((b - target) * (b - target) - 4.0 * a * c);
    return {m, sigma, (-(b - target) + root) / (2.0 * a)};
}

}  // namespace

TEST_CASE("structure constants against high-precision references") {
    const Momenta m{{0.21, 0.05}, 0.13, {0.37, -0.02}, 0.29};
    CHECK(relative_error(structure_constant(m, {0.17, 0.08}),
                         {1.0406282900299968895, 0.00017618506253889943501}) < 1e-12);
    CHECK(relative_error(structure_constant(m, {1.4, -0.3}),
                         {-0.0016822440735716832152, -0.0050788866786677375834}) < 1e-11);
    CHECK(relative_error(fusion_weight(0.3, 0.25, 0.2), 0.8608364558922270774) < 1e-12);
}

TEST_CASE("fusion weight is symmetric and even") {
    const Complex a{0.31, 0.02};
    const Complex b{0.17, -0.03};
    const Complex c{0.23, 0.05};
    const Complex ref = fusion_weight(a, b, c);
    CHECK(relative_error(fusion_weight(b, a, c), ref) < 1e-12);
    CHECK(relative_error(fusion_weight(c, b, a), ref) < 1e-12);
    CHECK(relative_error(fusion_weight(a, c, b), ref) < 1e-12);
    CHECK(relative_error(fusion_weight(-a, b, c), ref) < 1e-12);
    CHECK(relative_error(fusion_weight(a, -b, -c), ref) < 1e-12);
    CHECK_THROWS_AS(fusion_weight(0.5, 0.2, 0.1), PoleError);
}

TEST_CASE("product of structure constants at opposite momenta") {
    Sampler rng(201);
    for (int i = 0; i < 50; ++i) {
        const Momenta m = rng.complex_momenta(0.05, 0.45, 0.1);
        const Complex sigma = rng.complex_box(-1.5, 1.5, 0.3);
        const Complex lhs = structure_constant(m, sigma) * structure_constant(m.negated(), sigma);
        const Complex rhs = fusion_weight(m.zero, m.t, sigma) * fusion_weight(sigma, m.one, m.infinity);
        CHECK(relative_error(lhs, rhs) < 1e-9);
    }
}

TEST_CASE("quarter-momentum structure constants") {
    const Momenta quarter{0.25, 0.25, 0.25, 0.25};
    for (double sigma = 0.05; sigma < 0.5; sigma += 0.1) {
        const double plus = std::pow(16.0, -sigma * sigma) / std::cos(pi * sigma);
        const double minus = std::pow(16.0, -sigma * sigma) * std::cos(pi * sigma);
        CHECK(relative_error(structure_constant(quarter, sigma), plus) < 1e-11);
        CHECK(relative_error(structure_constant(quarter.negated(), sigma), minus) < 1e-11);
        const double step = std::pow(16.0, -(sigma + 1) * (sigma + 1)) / std::cos(pi * (sigma + 1)) / plus;
        CHECK(relative_error(structure_constant(quarter, sigma + 1.0) / structure_constant(quarter, sigma), step) <
              1e-11);
    }
}

TEST_CASE("charge-conserving point collapses the Fourier sum") {
    const Momenta m{0.2, 0.15, 0.1, -0.45};
    const Complex sigma = m.zero + m.t;
    for (const Complex s : {Complex(1.0), Complex(0.3, 0.8)}) {
        const MonodromyPoint p{m, sigma, s};
        const Complex t{0.3, 0.1};
        const Complex closed = charge_conserving_block(m, t);
        CHECK(relative_error(tau_normalized(p, t).value, closed) < 1e-10);
        CHECK(relative_error(tau_series(p, t).value, structure_constant(m, sigma) * closed) < 1e-10);
    }
    CHECK(relative_error(fusion_weight(m.zero, m.t, m.zero + m.t), 1.0) < 1e-12);
}

TEST_CASE("Fourier periodicity in the internal momentum") {
    Sampler rng(202);
    TauOptions wide;
    wide.n_window = 7;
    for (int i = 0; i < 3; ++i) {
        const MonodromyPoint p = random_point(rng);
        const Complex t{0.2, 0.05};
        const Complex base = tau_series(p, t, wide).value;
        const Complex shifted = tau_series({p.momenta, p.sigma + 1.0, p.twist}, t, wide).value;
        CHECK(relative_error(shifted, base / p.twist) < 1e-9);
        const Complex glued = tautau(p, t, std::conj(t), wide).value;
        const Complex glued_shift = tautau({p.momenta, p.sigma + 1.0, p.twist}, t, std::conj(t), wide).value;
        CHECK(relative_error(glued_shift, glued) < 1e-9);
    }
}

TEST_CASE("window doubling") {
    Sampler rng(203);
    const MonodromyPoint p = random_point(rng);
    TauOptions narrow;
    narrow.n_window = 4;
    TauOptions wide;
    wide.n_window = 6;
    CHECK(relative_error(tau_series(p, 0.2, narrow).value, tau_series(p, 0.2, wide).value) < 1e-8);
}

TEST_CASE("normalized series") {
    Sampler rng(204);
    const MonodromyPoint p = random_point(rng);
    const Complex t{0.25, -0.1};
    CHECK(relative_error(tau_normalized(p, t).value * structure_constant(p.momenta, p.sigma),
                         tau_series(p, t).value) < 1e-12);
    TauOptions single;
    single.n_window = 0;
    single.tail_budget = 10.0;
    const BlockValue block = block_eval(block_series(p.momenta, p.sigma, single.block_order), t);
    CHECK(relative_error(tau_normalized(p, t, single).value, block.value) < 1e-13);
}

TEST_CASE("the two antiholomorphic charts give one normalized series") {
    Sampler rng(205);
    for (int i = 0; i < 4; ++i) {
        const MonodromyPoint p = random_point(rng);
        const Complex tbar{0.3, -0.1};
        const MonodromyPoint a = antiholomorphic_image(p);
        const MonodromyPoint b = antiholomorphic_image_fixed_momenta(p);
        CHECK(relative_error(tau_normalized(a, tbar).value, tau_normalized(b, tbar).value) < 1e-9);
    }
}

TEST_CASE("both gluing formulas agree") {
    Sampler rng(206);
    for (int i = 0; i < 4; ++i) {
        const MonodromyPoint p = random_point(rng);
        const Complex t{0.3, 0.1};
        const TauEvaluation a = tautau(p, t, std::conj(t));
        const TauEvaluation b = tautau_fusion_form(p, t, std::conj(t));
        CHECK(relative_error(a.value, b.value) < 1e-9);
        CHECK(a.tail_estimate < 1e-8);
    }
}

TEST_CASE("opposite windings implement the double braid") {
    Sampler rng(207);
    for (int i = 0; i < 3; ++i) {
        const MonodromyPoint p = random_point(rng);
        const Complex t{0.3, 0.1};
        const Complex wound = tautau(p, t, std::conj(t), {}, 1, -1).value;
        const Complex braided = tautau(double_braid_zero_t(p), t, std::conj(t)).value;
        CHECK(relative_error(wound, braided) < 1e-8);
    }
}

TEST_CASE("quarter-momentum gluing from closed-form blocks") {
    for (const auto& [s0, s1] : {std::pair{0.13, 0.31}, std::pair{0.27, 0.08}}) {
        const Complex t{0.3, 0.1};
        const Complex closed = tautau_quarter(s0, s1, t, std::conj(t)).value;
        const Complex series = tautau(quarter_point(s0, s1), t, std::conj(t)).value;
        CHECK(relative_error(closed, series) < 1e-8);
    }
}

TEST_CASE("crossing identity of the glued tau function") {
    Sampler rng(208);
    for (int i = 0; i < 3; ++i) {
        const MonodromyPoint p = random_point(rng);
        CHECK(crossing_identity_residual(p, 0.4) < 1e-6);
    }
    const MonodromyPoint fixed = swap_fixed_point({0.21, 0.33, 0.21, 0.17}, {0.23, 0.02});
    CHECK(std::abs(traces_from_point(fixed).one_t - 2.0 * std::cos(2.0 * pi * fixed.sigma)) < 1e-10);
    CHECK(crossing_identity_residual(fixed, 0.5) < 1e-12);
}

TEST_CASE("error reporting") {
    const MonodromyPoint p{{0.21, 0.13, 0.37, 0.29}, 0.23, 1.0};
    TauOptions tight;
    tight.n_window = 1;
    tight.tail_budget = 1e-12;
    CHECK_THROWS_AS(tau_series(p, 0.5, tight), TruncationError);
    CHECK_THROWS_AS(tau_series(p, 0.8), DomainError);
    CHECK_THROWS_AS(tau_series({p.momenta, 0.5, 1.0}, 0.3), PoleError);
}
