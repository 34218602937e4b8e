#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "taub/errors.hpp"
#include "taub/special.hpp"
#include "taub/theories.hpp"

using namespace taub;
using taub::testing::relative_error;
using taub::testing::Sampler;

namespace {

const Complex kPoint{0.3, 0.1};

// Generic real momenta whose fusion supports stay clear of the half-integer poles
// in both channels.
const Momenta kRealMomenta{0.21, 0.13, 0.36, 0.29};

CorrelatorSpec liouville(double height = 0.2) {
    CorrelatorSpec spec;
    spec.theory = Theory::AnalyticLiouville;
    spec.momenta = kRealMomenta;
    spec.contour_height = height;
    return spec;
}

CorrelatorSpec ashkin_teller(double scale, int sector, int sector_sign) {
    CorrelatorSpec spec;
    spec.theory = Theory::AshkinTeller;
    spec.lattice_scale = scale;
    spec.sector = sector;
    spec.sector_sign = sector_sign;
    return spec;
}

}  // namespace

TEST_CASE("free field: closed form, factorized blocks and the tau function agree") {
    Sampler rng(601);
    for (int draw = 0; draw < 5; ++draw) {
        const double a = rng.uniform(0.05, 0.3);
        const double b = rng.uniform(0.05, 0.3);
        const double c = rng.uniform(-0.3, -0.05);
        const Momenta m{a, b, c, -(a + b + c)};
        const Complex t = rng.complex_box(0.15, 0.5, 0.15);
        const Complex closed = correlator_gff(m, t, std::conj(t));
        CHECK(relative_error(correlator_gff_factorized(m, t, std::conj(t)), closed) < 1e-10);
        CHECK(relative_error(correlator_gff_riccati(m, t, std::conj(t)), closed) < 1e-10);
    }
    const Complex t{0.2, 0.05};
    const Complex expected = std::pow(std::abs(t), 4.0 * 0.13 * 0.21) * std::pow(std::abs(1.0 - t), 4.0 * -0.07 * 0.21);
    CHECK(relative_error(correlator_gff({0.13, 0.21, -0.07, -0.27}, t, std::conj(t)), expected) < 1e-13);
    CHECK(correlator_gff({0.13, 0.21, -0.07, 0.1}, t, std::conj(t)) == Complex(0.0));
}

TEST_CASE("Runkel-Watts at the quarter point matches the Gaussian closed form") {
    CorrelatorSpec spec;
    spec.theory = Theory::RunkelWatts;
    spec.momenta = {0.25, 0.25, 0.25, 0.25};
    const CorrelatorValue v = correlator_rw(spec, kPoint, std::conj(kPoint));
    const Complex reference{0.86380786170682016987, 0.0};
    CHECK(relative_error(rw_quarter_closed_form(kPoint, std::conj(kPoint)), reference) < 1e-13);
    CHECK(relative_error(v.value, reference) < 1e-10);
    CHECK(v.quadrature_error < 1e-10);
    CHECK(v.tail_estimate < 1e-12);
}

TEST_CASE("Runkel-Watts crossing for generic real momenta") {
    CorrelatorSpec spec;
    spec.theory = Theory::RunkelWatts;
    spec.momenta = kRealMomenta;
    CHECK(crossing_residual(spec, 0.4) < 1e-9);
    const CorrelatorValue v = correlator(spec, 0.4, 0.4);
    CHECK(std::abs(v.value.imag()) < 1e-14 * std::abs(v.value));
    CHECK(relative_error(v.value, 0.351426713646761) < 1e-10);
}

TEST_CASE("Runkel-Watts rejects supports that reach a pole") {
    CorrelatorSpec spec;
    spec.theory = Theory::RunkelWatts;
    spec.momenta = {0.21, 0.13, 0.37, 0.29};
    CHECK_NOTHROW(correlator_rw(spec, 0.4, 0.4));
    spec.momenta = spec.momenta.crossed();
    CHECK_THROWS_AS(correlator_rw(spec, 0.6, 0.6), DomainError);
    spec.momenta = {{0.21, 0.01}, 0.13, 0.36, 0.29};
    CHECK_THROWS_AS(correlator_rw(spec, 0.4, 0.4), DomainError);
}

TEST_CASE("quadrature reports unreachable tolerances") {
    CorrelatorSpec spec = liouville();
    spec.quadrature.tolerance = 1e-18;
    spec.quadrature.max_depth = 1;
    CHECK_THROWS_AS(correlator_al(spec, 0.4, 0.4), QuadratureError);
    spec = liouville();
    spec.quadrature.panel_width = 0.5;
    CHECK_THROWS_AS(correlator_al(spec, 0.4, 0.4), DomainError);
}

TEST_CASE("Ashkin-Teller theta sums against high-precision references") {
    const Complex tb = std::conj(kPoint);
    CHECK(relative_error(correlator_at(ashkin_teller(1, 0, 0), kPoint, tb).value, 1.7474127062003740149) < 1e-12);
    CHECK(relative_error(correlator_at(ashkin_teller(1, 1, 1), kPoint, tb).value, 1.7078904035208544116) < 1e-12);
    CHECK(relative_error(correlator_at(ashkin_teller(2, 1, 0), kPoint, tb).value, 3.455231441720000813) < 1e-12);
    CHECK(relative_error(correlator_at(ashkin_teller(0.7, 0, 1), kPoint, tb).value, 1.3240403821351074561) < 1e-12);
}

TEST_CASE("Ashkin-Teller lattice average equals the theta sum") {
    const Complex tb = std::conj(kPoint);
    for (const double scale : {1.0, 2.0}) {
        for (int e = 0; e < 2; ++e) {
            for (int e_sign = 0; e_sign < 2; ++e_sign) {
                CorrelatorSpec spec = ashkin_teller(scale, e, e_sign);
                const Complex theta = correlator_at(spec, kPoint, tb).value;
                spec.route = LatticeRoute::TauAverage;
                CHECK(relative_error(correlator_at(spec, kPoint, tb).value, theta) < 1e-10);
            }
        }
    }
    CorrelatorSpec spec = ashkin_teller(0.7, 0, 0);
    spec.route = LatticeRoute::TauAverage;
    CHECK_THROWS_AS(correlator_at(spec, kPoint, tb), DomainError);
}

TEST_CASE("Ashkin-Teller free orbit and sector permutations") {
    const Complex tb = std::conj(kPoint);
    const double free = std::pow(std::abs(kPoint), -0.25) * std::pow(std::abs(1.0 - kPoint), -0.25);
    CHECK(relative_error(at_free_orbit(kPoint, tb), free) < 1e-12);
    for (const double scale : {1.0, 2.0, 0.7}) {
        CHECK(at_sector_permutation_residual(scale, kPoint) < 1e-12);
    }
    CHECK(monodromy_residual(ashkin_teller(1, 0, 0), kPoint) < 1e-12);
    CHECK(crossing_residual(ashkin_teller(1, 1, 0), 0.4) < 1e-12);
}

TEST_CASE("analytic Liouville is independent of the contour height") {
    const Complex reference = correlator_al(liouville(0.2), 0.4, 0.4).value;
    for (const double h : {0.1, 0.35, -0.2}) {
        CHECK(relative_error(correlator_al(liouville(h), 0.4, 0.4).value, reference) < 1e-9);
    }
    CHECK_THROWS_AS(correlator_al(liouville(0.0), 0.4, 0.4), DomainError);
    CHECK_THROWS_AS(correlator_al(liouville(0.5), 0.4, 0.4), DomainError);
}

TEST_CASE("analytic Liouville crossing, single-valuedness and residues") {
    const CorrelatorSpec spec = liouville();
    CHECK(crossing_residual(spec, 0.4) < 1e-9);
    CHECK(monodromy_residual(spec, kPoint) < 1e-9);
    for (const double center : {0.0, 0.5}) {
        const ResidueSum sum = residue_sum_check(spec, kPoint, center);
        CHECK(std::abs(sum.total) < 1e-10);
        CHECK(sum.largest > 1e-6);
    }
}

TEST_CASE("contour residue of a simple pole") {
    const Complex center{0.3, -0.2};
    auto f = [&](Complex z) { return 2.5 / (z - center) + z * z; };
    CHECK(relative_error(contour_residue(f, center, 0.1, 16), 2.5) < 1e-13);
    auto even = [](Complex z) { return 1.0 / (z * z); };
    CHECK(std::abs(contour_residue(even, 0.0, 0.1, 16)) < 1e-14);
}

TEST_CASE("analytic Liouville with a slightly complex momentum") {
    CorrelatorSpec spec = liouville(0.2);
    spec.momenta.infinity = {0.29, 0.03};
    const Complex t{0.4, 0.05};
    const Complex reference = correlator_al(spec, t, std::conj(t)).value;
    CHECK(std::isfinite(std::abs(reference)));
    spec.contour_height = 0.35;
    CHECK(relative_error(correlator_al(spec, t, std::conj(t)).value, reference) < 1e-9);
}

TEST_CASE("every theory is crossing symmetric and single-valued") {
    CorrelatorSpec gff;
    gff.momenta = {0.13, 0.21, -0.07, -0.27};
    CorrelatorSpec rw;
    rw.theory = Theory::RunkelWatts;
    rw.momenta = kRealMomenta;
    for (const CorrelatorSpec& spec : {gff, rw, ashkin_teller(1, 0, 0), liouville()}) {
        CHECK(crossing_residual(spec, {0.3, 0.1}) < 1e-9);
        CHECK(monodromy_residual(spec, 0.4) < 1e-9);
    }
    CHECK(crossing_residual(gff, 0.4) < 1e-14);
    CHECK(monodromy_residual(gff, kPoint) < 1e-14);
}
