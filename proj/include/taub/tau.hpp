#pragma once

#include <optional>

#include "taub/blocks.hpp"
#include "taub/monodromy.hpp"

namespace taub {

/// Truncation controls for the Fourier sum over shifted internal momenta.
struct TauOptions {
    int n_window = 5;          ///< modes sigma + n with |n| <= n_window
    int block_order = 20;      ///< truncation order of every block series
    double tail_budget = 1e-8; ///< bound on the relative size of the outermost modes
    BlockOptions block{.nome_resummation = true};
};

struct TauEvaluation {
    Complex value;
    int n_window = 0;
    int block_order = 0;
    /// Largest |term_n| / |value| over the two outermost modes n = +-n_window.
    double tail_estimate = 0.0;
    /// Block truncation estimate weighted by the size of each mode.
    double block_truncation = 0.0;
};

/// log C(theta; sigma) as a sum of log G terms, or nullopt when a numerator
/// G-function vanishes (C = 0). Throws PoleError on denominator zeros.
std::optional<Complex> log_structure_constant(const Momenta& momenta, Complex sigma);

/// The Barnes-G structure constant weighting each Fourier mode.
Complex structure_constant(const Momenta& momenta, Complex sigma);

/// Even, fully symmetric three-momentum factor, as log; nullopt when zero.
std::optional<Complex> log_fusion_weight(Complex first, Complex second, Complex third);
Complex fusion_weight(Complex first, Complex second, Complex third);

/// Fourier series sum_n s^n C(theta; sigma + n) B(theta; sigma + n; t).
/// `winding` continues t around the origin.
TauEvaluation tau_series(const MonodromyPoint& point, Complex t, const TauOptions& options = {},
                         int winding = 0);

/// The same series with C(theta; sigma + n) replaced by C(theta; sigma + n) / C(theta; sigma).
TauEvaluation tau_normalized(const MonodromyPoint& point, Complex t, const TauOptions& options = {},
                             int winding = 0);

/// Holomorphic times antiholomorphic gluing tau(P, t) tau(iota(P), tbar).
/// tbar is an independent argument; each side has its own winding counter.
TauEvaluation tautau(const MonodromyPoint& point, Complex t, Complex tbar, const TauOptions& options = {},
                     int winding_t = 0, int winding_tbar = 0);

/// The equivalent form Phi Phi tau_normalized(P, t) tau_normalized(iota'(P), tbar).
TauEvaluation tautau_fusion_form(const MonodromyPoint& point, Complex t, Complex tbar,
                                 const TauOptions& options = {}, int winding_t = 0,
                                 int winding_tbar = 0);

/// tautau at the quarter-momentum point with coordinates (sigma_0t, sigma_1t),
/// using the closed-form block. The two structure-constant normalizations are set to one.
TauEvaluation tautau_quarter(Complex sigma_zero_t, Complex sigma_one_t, Complex t, Complex tbar,
                             int n_window = 5, int winding_t = 0, int winding_tbar = 0);

/// |tautau(bst(P); 1 - t, 1 - tbar) - tautau(P; t, tbar)| / |tautau(P; t, tbar)| with tbar = conj(t).
double crossing_identity_residual(const MonodromyPoint& point, Complex t, const TauOptions& options = {});

}  // namespace taub
