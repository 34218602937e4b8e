#pragma once

#include <complex>

namespace taub {

using Complex = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr Complex I{0.0, 1.0};

/// External momenta of a four-point function, one per puncture at 0, t, 1 and
/// infinity. Conformal dimensions are the squares of the momenta.
struct Momenta {
    Complex zero;
    Complex t;
    Complex one;
    Complex infinity;

    [[nodiscard]] Momenta negated() const { return {-zero, -t, -one, -infinity}; }

    /// Momenta seen from the t-channel, with the punctures at 0 and 1 exchanged.
    [[nodiscard]] Momenta crossed() const { return {one, t, zero, infinity}; }

    [[nodiscard]] Complex sum() const { return zero + t + one + infinity; }
};

}  // namespace taub
