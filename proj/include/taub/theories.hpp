#pragma once

#include <functional>

#include "taub/blocks.hpp"
#include "taub/momenta.hpp"

namespace taub {

enum class Theory { FreeField, RunkelWatts, AshkinTeller, AnalyticLiouville };

/// How the Ashkin-Teller correlator is assembled: the theta-function double sum,
/// or the average of the glued quarter-momentum tau function over the lattice
/// (integer scale only).
enum class LatticeRoute { ThetaSum, TauAverage };

/// Composite Gauss-Legendre rule on [-cutoff, cutoff] (or [0, cutoff] for even
/// integrands). Each panel is compared with the rule of half the order and
/// bisected, up to max_depth times, until the summed differences are below
/// tolerance relative to the integral. The cutoff is raised in steps of 2 up to
/// max_cutoff until the integrand at the edge is below tail_budget.
struct QuadratureOptions {
    int nodes_per_panel = 8;
    double panel_width = 0.25;
    double cutoff = 6.0;
    double max_cutoff = 14.0;
    double tail_budget = 1e-12;
    double tolerance = 1e-10;
    int max_depth = 12;
};

struct CorrelatorSpec {
    Theory theory = Theory::FreeField;
    Momenta momenta{};

    double lattice_scale = 1.0;  ///< Ashkin-Teller N
    int sector = 0;              ///< Ashkin-Teller epsilon: half-shift of the internal momentum
    int sector_sign = 0;         ///< Ashkin-Teller epsilon': sign alternation in the winding number
    LatticeRoute route = LatticeRoute::ThetaSum;
    int lattice_cutoff = 8;      ///< largest momentum kept in the lattice sums
    double lattice_budget = 1e-12;

    double contour_height = 0.2;  ///< analytic Liouville contour i h + R, h != 0

    QuadratureOptions quadrature{};
    int block_order = 12;
    int n_window = 5;
    BlockOptions block{.radius = 0.75, .tolerance = 1e-6, .nome_resummation = true};
};

struct CorrelatorValue {
    Complex value;
    /// Edge integrand (times panel width) or outermost lattice terms, relative to |value|.
    double tail_estimate = 0.0;
    /// Sum over panels of |fine rule - half-order rule|, relative to |value|.
    double quadrature_error = 0.0;
    /// Block truncation estimates weighted by each node's contribution, relative to |value|.
    double block_truncation = 0.0;
    double cutoff = 0.0;
    int evaluations = 0;
};

/// Kronecker delta on the total charge times t^(2 a) (1-t)^(2 b) tbar^(2 a) (1-tbar)^(2 b),
/// with a = theta_0 theta_t and b = theta_1 theta_t.
Complex correlator_gff(const Momenta& momenta, Complex t, Complex tbar, int winding_t = 0,
                       int winding_tbar = 0);

/// The same correlator as a product of two series blocks at sigma = theta_0 + theta_t.
Complex correlator_gff_factorized(const Momenta& momenta, Complex t, Complex tbar, int order = 20);

/// tautau at the point where the internal momenta are theta_0 + theta_t and theta_t + theta_1.
Complex correlator_gff_riccati(const Momenta& momenta, Complex t, Complex tbar);

/// Integral over real sigma of the step-weighted fusion weights and blocks. Real momenta only.
CorrelatorValue correlator_rw(const CorrelatorSpec& spec, Complex t, Complex tbar, int winding_t = 0,
                              int winding_tbar = 0);

/// Gaussian integral of the quarter-momentum glued blocks:
/// X(t) X(tbar) (-i (period(t) + period(tbar)))^(-1/2), X = t^(-1/8) (1-t)^(-1/8) / theta_3.
Complex rw_quarter_closed_form(Complex t, Complex tbar, int winding_t = 0, int winding_tbar = 0);

CorrelatorValue correlator_at(const CorrelatorSpec& spec, Complex t, Complex tbar, int winding_t = 0,
                              int winding_tbar = 0);

/// Quarter-momentum tautau at sigma_0t = sigma_1t = 0: the orbit of the origin.
Complex at_free_orbit(Complex t, Complex tbar, int winding_t = 0, int winding_tbar = 0);

/// Integral of the fusion weights and blocks along i h + R.
CorrelatorValue correlator_al(const CorrelatorSpec& spec, Complex t, Complex tbar, int winding_t = 0,
                              int winding_tbar = 0);

/// Dispatches on spec.theory. The free field reports only a value.
CorrelatorValue correlator(const CorrelatorSpec& spec, Complex t, Complex tbar, int winding_t = 0,
                           int winding_tbar = 0);

/// (1 / 2 pi i) times the trapezoidal integral of f around a circle.
Complex contour_residue(const std::function<Complex(Complex)>& f, Complex center, double radius, int points);

struct ResidueSum {
    Complex total;
    double largest = 0.0;  ///< largest single residue, for scale
};

/// Sum of the residues of the analytic Liouville integrand at center + n, |n| <= spec.n_window,
/// with tbar = conj(t).
ResidueSum residue_sum_check(const CorrelatorSpec& spec, Complex t, double center, double radius = 0.2,
                             int points = 32);

/// |F(1 - t) - F(t)| / |F(t)|, where F(1 - t) uses crossed momenta (and, for the
/// Ashkin-Teller sectors, the exchanged sector). tbar = conj(t).
double crossing_residual(const CorrelatorSpec& spec, Complex t);

/// |F(t turned once around 0, tbar turned once the other way) - F(t)| / |F(t)|.
double monodromy_residual(const CorrelatorSpec& spec, Complex t);

/// Largest mismatch of the Ashkin-Teller sector permutations: sector (e, e') at 1 - t
/// against sector (e', e) at t, and at t / (t - 1) against |1 - t|^(1/4) times sector
/// (e, e + e') at t.
double at_sector_permutation_residual(double lattice_scale, Complex t);

}  // namespace taub
