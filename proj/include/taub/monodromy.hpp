#pragma once

#include "taub/momenta.hpp"

namespace taub {

/// Point of the SL(2, C) character variety of the four-punctured sphere in
/// Darboux coordinates: the internal momentum of the 0t-channel and the twist.
struct MonodromyPoint {
    Momenta momenta;
    Complex sigma;
    Complex twist;
};

/// Traces of single and paired monodromies.
struct Traces {
    Complex zero, t, one, infinity;
    Complex zero_t, one_t, zero_one;
};

struct Mat2 {
    Complex a, b, c, d;

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Mat2 diagonal(Complex x, Complex y) { return {x, 0.0, 0.0, y}; }

    [[nodiscard]] Complex trace() const { return a + d; }
    [[nodiscard]] Complex det() const { return a * d - b * c; }
    [[nodiscard]] Mat2 inverse() const;
    [[nodiscard]] Mat2 adjoint() const;
    [[nodiscard]] double distance(const Mat2& other) const;

    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
                x.c * y.b + x.d * y.d};
    }
    friend Mat2 operator*(Complex s, const Mat2& x) { return {s * x.a, s * x.b, s * x.c, s * x.d}; }
    friend Mat2 operator+(const Mat2& x, const Mat2& y) {
        return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
    }
};

struct MonodromyMatrices {
    Mat2 zero, t, one, infinity;
};

/// Explicit matrices realizing the point. `chart_scale` is the free diagonal
/// gauge of the (0, t) pair; it changes the matrices by conjugation only.
MonodromyMatrices build_matrices(const MonodromyPoint& point, Complex chart_scale = 1.0);

Traces traces_from_point(const MonodromyPoint& point);
Traces traces_from_matrices(const MonodromyMatrices& matrices);

/// The cubic relation satisfied by the seven traces.
Complex jimbo_fricke(const Traces& traces);

/// Exchanges the two sheets of the cubic over fixed (p_0t, p_1t).
Traces exchange_sheets(const Traces& traces);

/// Monodromy data of the complex-conjugated solution: (-theta, sigma, 1/s).
MonodromyPoint antiholomorphic_image(const MonodromyPoint& point);

/// The same data in the chart that keeps theta fixed.
MonodromyPoint antiholomorphic_image_fixed_momenta(const MonodromyPoint& point);

/// Sign reversal of all momenta with the compensating twist rescaling.
MonodromyPoint momentum_sign_flip(const MonodromyPoint& point);

/// Coordinates of the same point in the 1t-channel.
struct ChannelCoordinates {
    Complex sigma;
    Complex twist;
};

/// Both sigma_1t candidates with their twists and reconstruction residuals.
struct ChannelCandidates {
    ChannelCoordinates principal;
    ChannelCoordinates reflected;
    double principal_residual = 0.0;
    double reflected_residual = 0.0;
};

ChannelCandidates channel_candidates(const MonodromyPoint& point);

/// Principal consistent candidate; BranchError if neither reproduces the traces.
ChannelCoordinates channel_map(const MonodromyPoint& point, double tolerance = 1e-7);

/// Traces rebuilt from 1t-channel coordinates.
Traces traces_from_crossed_channel(const Momenta& momenta, Complex sigma_one_t, Complex twist_one_t);

/// Exponent eta with twist = -exp(2 pi i eta), principal branch.
Complex twist_exponent(Complex twist);
Complex twist_from_exponent(Complex eta);

struct AsymptoticChannelImage {
    Complex sigma;
    Complex eta;
    double contour_shift;   ///< Im sigma_1t of the image contour
    double contour_twist;   ///< Im eta_1t of the image contour
};

/// Limiting affine channel map for |Im sigma|, |Im eta| and their difference
/// all larger than `separation`. The point is first moved to the sheet with
/// Im sigma > 0; there sigma_1t = -(eta + theta_t + theta_1 + 1/2) sign(Im eta)
/// and eta_1t = sigma sign(Im eta) + theta_0 + theta_t - 1/2.
AsymptoticChannelImage asymptotic_channel_map(const MonodromyPoint& point, double separation = 3.0);

/// Distance between the asymptotic and exact channel maps modulo the integer
/// shifts and the (sigma, eta) -> (-sigma, -eta) identification.
double asymptotic_channel_deviation(const MonodromyPoint& point, double separation = 3.0);

/// Full turn of t around 0: twist -> twist exp(4 pi i sigma).
MonodromyPoint double_braid_zero_t(const MonodromyPoint& point);

/// s- to t-channel braid: crossed momenta with the 1t-channel coordinates.
MonodromyPoint crossing_braid(const MonodromyPoint& point);

MonodromyMatrices braid_zero_t(const MonodromyMatrices& m);
MonodromyMatrices braid_t_one(const MonodromyMatrices& m);
MonodromyMatrices braid_one_infinity(const MonodromyMatrices& m);
MonodromyMatrices crossing_matrices(const MonodromyMatrices& m);

/// 1 when the triple of real momenta satisfies the unitary fusion condition.
int fusion_step(double first, double second, double third);

/// |s|^2 on the SU(2) locus; NotUnitaryError outside it.
double unitary_twist_radius(Complex sigma, const Momenta& momenta);

/// Squared modulus of the (0, t) chart scale that makes M_t unitary.
double unitary_chart_scale(Complex sigma, const Momenta& momenta);

/// Quarter-momentum point parametrized by the two internal momenta.
MonodromyPoint quarter_point(Complex sigma_zero_t, Complex sigma_one_t);

/// The explicit quarter-momentum matrices in the (sigma_0t, sigma_1t) form.
MonodromyMatrices quarter_matrices(Complex sigma_zero_t, Complex sigma_one_t);

}  // namespace taub
