#include "taub/special.hpp"

#include <array>
#include <cmath>
#include <string>

#include "taub/errors.hpp"

namespace taub {
namespace {

constexpr double stirling_threshold = 15.0;
constexpr double log_two_pi = 1.8378770664093454836;
constexpr double zeta_prime_minus_one = -0.16542114370045092921;

// Bernoulli numbers B_2, B_4, ..., B_22.
constexpr std::array<double, 11> bernoulli_even = {
    1.0 / 6.0,       -1.0 / 30.0,      1.0 / 42.0,         -1.0 / 30.0,
    5.0 / 66.0,      -691.0 / 2730.0,  7.0 / 6.0,          -3617.0 / 510.0,
    43867.0 / 798.0, -174611.0 / 330.0, 854513.0 / 138.0};

bool near_non_positive_integer(Complex z, double tol) {
    if (std::abs(z.imag()) > tol || z.real() > 0.5) return false;
    return std::abs(z.real() - std::round(z.real())) <= tol;
}

std::string describe(Complex z) {
    return "(" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")";
}

Complex stirling_log_gamma(Complex z) {
    Complex sum = 0.0;
    const Complex inv = 1.0 / z;
    const Complex inv2 = inv * inv;
    Complex power = inv;
    for (std::size_t k = 1; k <= 10; ++k) {
        const double kk = static_cast<double>(k);
        sum += bernoulli_even[k - 1] / (2.0 * kk * (2.0 * kk - 1.0)) * power;
        power *= inv2;
    }
    return (z - 0.5) * std::log(z) - z + 0.5 * log_two_pi + sum;
}

// Asymptotic expansion of log G(u + 1) for large |u|.
Complex asymptotic_log_barnes(Complex u) {
    const Complex log_u = std::log(u);
    const Complex u2 = u * u;
    const Complex inv2 = 1.0 / u2;
    Complex power = inv2;
    Complex sum = 0.0;
    for (std::size_t k = 1; k <= 10; ++k) {
        const double kk = static_cast<double>(k);
        sum += bernoulli_even[k] / (4.0 * kk * (kk + 1.0)) * power;
        power *= inv2;
    }
    return 0.5 * u2 * log_u - 0.75 * u2 + 0.5 * u * log_two_pi - log_u / 12.0 +
           zeta_prime_minus_one + sum;
}

int shift_count(Complex z, double threshold) {
    if (z.real() >= threshold) return 0;
    return static_cast<int>(std::ceil(threshold - z.real()));
}

}  // namespace

bool is_barnes_zero(Complex z, double tol) { return near_non_positive_integer(z, tol); }

Complex log_gamma(Complex z) {
    if (near_non_positive_integer(z, 1e-14)) {
        throw PoleError("log_gamma: pole at " + describe(z));
    }
    const int shift = shift_count(z, stirling_threshold);
    Complex correction = 0.0;
    for (int k = 0; k < shift; ++k) correction += std::log(z + static_cast<double>(k));
    return stirling_log_gamma(z + static_cast<double>(shift)) - correction;
}

Complex log_barnes_g(Complex z) {
    if (near_non_positive_integer(z, 1e-14)) {
        throw PoleError("log_barnes_g: zero of G at " + describe(z));
    }
    const int shift = shift_count(z, stirling_threshold + 1.0);
    if (shift == 0) return asymptotic_log_barnes(z - 1.0);

    // log G(z) = log G(z + N) - sum_{k<N} log Gamma(z + k), with the Gamma
    // logs generated downward from a single Stirling evaluation.
    Complex log_gamma_k = stirling_log_gamma(z + static_cast<double>(shift));
    Complex total = asymptotic_log_barnes(z + static_cast<double>(shift - 1));
    for (int k = shift - 1; k >= 0; --k) {
        log_gamma_k -= std::log(z + static_cast<double>(k));
        total -= log_gamma_k;
    }
    return total;
}

Complex barnes_g(Complex z) {
    if (near_non_positive_integer(z, 1e-14)) return 0.0;
    return std::exp(log_barnes_g(z));
}

Complex barnes_shift_ratio(Complex nu, int n) {
    if (std::abs(nu.imag()) < 1e-14 && std::abs(nu.real() - std::round(nu.real())) < 1e-14) {
        throw PoleError("barnes_shift_ratio: integer nu " + describe(nu));
    }
    if (n == 0) return 1.0;
    return std::exp(log_barnes_g(1.0 - nu + static_cast<double>(n)) - log_barnes_g(1.0 - nu));
}

Complex agm(Complex a, Complex b) {
    for (int iter = 0; iter < 64; ++iter) {
        if (std::abs(a - b) <= 1e-16 * std::abs(a)) break;
        const Complex mean = 0.5 * (a + b);
        Complex root = std::sqrt(a * b);
        if (std::abs(mean - root) > std::abs(mean + root)) root = -root;
        a = mean;
        b = root;
    }
    return a;
}

Complex theta3(Complex nome) {
    if (std::abs(nome) >= 1.0) throw DomainError("theta3: |q| >= 1");
    Complex sum = 1.0;
    Complex power = nome;          // q^(n^2)
    Complex step = nome * nome * nome;  // q^(2n+1)
    const Complex q2 = nome * nome;
    for (int n = 1; n < 100000; ++n) {
        sum += 2.0 * power;
        if (std::abs(power) < 1e-18 * std::abs(sum)) break;
        power *= step;
        step *= q2;
    }
    return sum;
}

EllipticData elliptic_data(Complex t, int winding) {
    if (std::abs(t) < 1e-300 || std::abs(1.0 - t) < 1e-15) {
        throw DomainError("elliptic_data: t at a branch point " + describe(t));
    }
    const Complex period =
        I * agm(1.0, std::sqrt(1.0 - t)) / agm(1.0, std::sqrt(t)) + 2.0 * static_cast<double>(winding);
    const Complex nome = std::exp(I * pi * period);
    if (!(std::abs(nome) < 1.0)) throw DomainError("elliptic_data: nome outside the unit disc");
    return {nome, period, theta3(nome)};
}

}  // namespace taub
