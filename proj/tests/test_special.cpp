#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "taub/errors.hpp"
#include "taub/special.hpp"

using namespace taub;
using taub::testing::relative_error;
using taub::testing::Sampler;

namespace {

// Complete elliptic integral K(m) from the Gauss hypergeometric series, valid for |m| < 1.
Complex elliptic_k_series(Complex m) {
    Complex term = 1.0;
    Complex sum = 1.0;
    for (int n = 1; n < 4000; ++n) {
        const double ratio = (n - 0.5) / n;
        term *= ratio * ratio * m;
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return 0.5 * pi * sum;
}

Complex theta3_product(Complex q) {
    Complex product = 1.0;
    Complex q2n = 1.0;
    for (int n = 1; n < 400; ++n) {
        q2n *= q * q;
        const Complex q2n1 = q2n / q;
        product *= (1.0 - q2n) * (1.0 + q2n1) * (1.0 + q2n1);
    }
    return product;
}

}  // namespace

TEST_CASE("log_gamma at classical points and high-precision references") {
    CHECK(std::abs(log_gamma(1.0)) < 1e-15);
    CHECK(std::abs(log_gamma(0.5) - std::log(std::sqrt(pi))) < 1e-14);
    CHECK(relative_error(log_gamma({3.7, 2.1}), {0.78534695807382238876, 2.5830129251152622486}) < 1e-13);
    CHECK(relative_error(log_gamma({0.2, -4.5}), {-6.6004701317549313176, -1.7963614444947443024}) < 1e-13);
    CHECK(relative_error(log_gamma({-2.3, 0.7}), {-1.2664294851930893798, -8.0767823667120556327}) < 1e-12);
    CHECK_THROWS_AS(log_gamma(0.0), PoleError);
    CHECK_THROWS_AS(log_gamma(-3.0), PoleError);
}

TEST_CASE("log_gamma reproduces the functional equation") {
    Sampler rng(11);
    for (int i = 0; i < 50; ++i) {
        const Complex z = rng.complex_box(-6.0, 6.0, 6.0);
        const Complex lhs = std::exp(log_gamma(z + 1.0) - log_gamma(z));
        CHECK(relative_error(lhs, z) < 1e-11);
    }
}

TEST_CASE("Barnes G at integers and reference values") {
    CHECK(std::abs(log_barnes_g(1.0)) < 1e-13);
    CHECK(std::abs(log_barnes_g(2.0)) < 1e-13);
    CHECK(std::abs(log_barnes_g(3.0)) < 1e-13);
    CHECK(std::abs(log_barnes_g(4.0) - std::log(2.0)) < 1e-13);
    CHECK(std::abs(log_barnes_g(0.5) - (-0.5054330544896953828)) < 1e-13);
    CHECK(relative_error(barnes_g(0.5), 0.60324428120944620619) < 1e-13);
    CHECK(relative_error(barnes_g({2.5, 1.5}), {0.50329734705303409917, -0.19465247960110698154}) < 1e-12);
    CHECK(relative_error(barnes_g({-1.3, 0.4}), {-0.18236943043126822158, 0.24505906354309528395}) < 1e-12);
    CHECK(relative_error(barnes_g({0.7, -3.1}), {2.7271925073179162171, -15.364332344067071836}) < 1e-12);
    CHECK(relative_error(barnes_g({25.3, 2.0}), {4.7443670780139246424e222, 3.1056515243986825208e223}) < 1e-11);
    CHECK(barnes_g(-2.0) == Complex(0.0));
    CHECK_THROWS_AS(log_barnes_g(0.0), PoleError);
    CHECK_THROWS_AS(log_barnes_g(-4.0), PoleError);
}

TEST_CASE("Barnes recursion G(z + 1) = Gamma(z) G(z) on a box") {
    Sampler rng(7);
    for (int i = 0; i < 100; ++i) {
        const Complex z = rng.complex_box(-5.0, 5.0, 5.0);
        const Complex ratio = std::exp(log_barnes_g(z + 1.0) - log_barnes_g(z));
        CHECK(relative_error(ratio, std::exp(log_gamma(z))) < 1e-10);
    }
}

TEST_CASE("Barnes shift ratio obeys the reflection identity") {
    CHECK(barnes_shift_ratio(0.3, 0) == Complex(1.0));
    Sampler rng(3);
    for (int i = 0; i < 40; ++i) {
        const Complex nu = rng.complex_box(-0.9, 0.9, 0.6);
        for (int n = -5; n <= 5; ++n) {
            const double sign = ((n * (n - 1) / 2) % 2 == 0) ? 1.0 : -1.0;
            const Complex rhs = sign * std::exp(log_barnes_g(1.0 + nu - static_cast<double>(n)) -
                                                log_barnes_g(1.0 + nu)) *
                                std::pow(pi / std::sin(pi * nu), n);
            CHECK(relative_error(barnes_shift_ratio(nu, n), rhs) < 1e-9);
        }
    }
}

TEST_CASE("elliptic period at the self-dual point") {
    const EllipticData d = elliptic_data(0.5);
    CHECK(std::abs(d.period - I) < 1e-14);
    CHECK(std::abs(d.nome - std::exp(-pi)) < 1e-15);
}

TEST_CASE("elliptic period agrees with the hypergeometric oracle") {
    for (const Complex t : {Complex(0.3), Complex(0.3, 0.2), Complex(0.1, -0.25), Complex(0.6, 0.1)}) {
        const Complex expected = I * elliptic_k_series(1.0 - t) / elliptic_k_series(t);
        const EllipticData d = elliptic_data(t);
        CHECK(std::abs(d.period - expected) < 1e-12);
        CHECK(d.period.imag() > 0.0);
        CHECK(std::abs(d.nome) < 1.0);
    }
    const EllipticData real = elliptic_data(0.3);
    CHECK(std::abs(real.period - Complex(0.0, 1.210908403396605511)) < 1e-14);
    CHECK(std::abs(real.theta3_at_zero - 1.0445553649102480994) < 1e-14);
    const EllipticData cplx = elliptic_data({0.3, 0.2});
    CHECK(std::abs(cplx.period - Complex(0.22882456078277653348, 1.1570833984306862528)) < 1e-14);
    CHECK(std::abs(cplx.nome - Complex(0.01985349557195754878, 0.017373335610695856832)) < 1e-14);
    CHECK(std::abs(cplx.theta3_at_zero - Complex(1.0397060564266225809, 0.034746925990018060112)) < 1e-14);
}

TEST_CASE("modular exchange of the period for real t") {
    for (double t = 0.05; t < 1.0; t += 0.1) {
        const Complex eta = elliptic_data(t).period;
        const Complex dual = elliptic_data(1.0 - t).period;
        CHECK(std::abs(dual + 1.0 / eta) < 1e-10);
    }
}

TEST_CASE("theta3 series matches the product form") {
    for (const Complex q : {Complex(0.1), Complex(0.3, 0.2), Complex(-0.45, 0.1), Complex(0.0, 0.49)}) {
        CHECK(std::abs(theta3(q) - theta3_product(q)) < 1e-12);
    }
}

TEST_CASE("winding shifts the period by two per turn") {
    const Complex t{0.2, 0.1};
    CHECK(std::abs(elliptic_data(t, 1).period - elliptic_data(t).period - 2.0) < 1e-14);
    CHECK(std::abs(elliptic_data(t, 1).theta3_at_zero - elliptic_data(t).theta3_at_zero) < 1e-13);
}

TEST_CASE("branch points are rejected") {
    CHECK_THROWS_AS(elliptic_data(0.0), DomainError);
    CHECK_THROWS_AS(elliptic_data(1.0), DomainError);
}
