#pragma once

#include <complex>
#include <random>

#include "taub/momenta.hpp"

namespace taub::testing {

inline double relative_error(Complex actual, Complex expected) {
    return std::abs(actual - expected) / std::max(std::abs(expected), 1e-300);
}

/// Fixed-seed generator so every run draws the same parameters.
class Sampler {
public:
    explicit Sampler(unsigned seed) : engine_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

    Complex complex_box(double re_lo, double re_hi, double im_half_width) {
        return {uniform(re_lo, re_hi), uniform(-im_half_width, im_half_width)};
    }

    Momenta real_momenta(double lo = 0.05, double hi = 0.45) {
        return {uniform(lo, hi), uniform(lo, hi), uniform(lo, hi), uniform(lo, hi)};
    }

    Momenta complex_momenta(double lo = 0.05, double hi = 0.45, double im = 0.1) {
        return {complex_box(lo, hi, im), complex_box(lo, hi, im), complex_box(lo, hi, im),
                complex_box(lo, hi, im)};
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace taub::testing
