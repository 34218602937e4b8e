#pragma once

#include "taub/momenta.hpp"

namespace taub {

/// Principal branch of log Gamma. Throws PoleError at non-positive integers.
Complex log_gamma(Complex z);

/// Logarithm of the Barnes G-function, continued consistently with
/// G(z + 1) = Gamma(z) G(z). Throws PoleError at the zeros z = 0, -1, -2, ...
Complex log_barnes_g(Complex z);

/// Barnes G itself; returns exactly zero at its zeros instead of throwing.
Complex barnes_g(Complex z);

/// True when z is within `tol` of a non-positive integer.
bool is_barnes_zero(Complex z, double tol = 1e-12);

/// G(1 - nu + n) / G(1 - nu), evaluated from log G.
Complex barnes_shift_ratio(Complex nu, int n);

/// Modular data of the elliptic curve branched over 0, t, 1 and infinity.
struct EllipticData {
    Complex nome;            ///< q = exp(i pi tau)
    Complex period;          ///< tau = i K(1 - t) / K(t)
    Complex theta3_at_zero;  ///< Jacobi theta_3(0 | tau)
};

/// Period ratio via the arithmetic-geometric mean. `winding` counts turns of t
/// around the origin; each turn shifts the period by 2.
EllipticData elliptic_data(Complex t, int winding = 0);

/// theta_3(0 | tau) from its nome by the q^(n^2) series. Requires |q| < 1.
Complex theta3(Complex nome);

/// Complex arithmetic-geometric mean on the principal (right-choice) branch.
Complex agm(Complex a, Complex b);

}  // namespace taub
