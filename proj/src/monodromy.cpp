#include "taub/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "taub/errors.hpp"

namespace taub {
namespace {

constexpr double chart_tolerance = 1e-10;

Complex sin_pi(Complex x) { return std::sin(pi * x); }
Complex turn(Complex x) { return std::exp(2.0 * pi * I * x); }
Complex two_cos(Complex x) { return 2.0 * std::cos(2.0 * pi * x); }

double sign_of(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

void require_nonzero(Complex value, const char* what) {
    if (std::abs(value) < chart_tolerance) {
        throw ChartError(std::string("vanishing chart denominator: ") + what);
    }
}

// Rank-one update e^{-2 pi i theta} + (e^{2 pi i theta} - e^{-2 pi i theta}) u^T v.
Mat2 rank_one_monodromy(Complex theta, Complex u1, Complex u2, Complex v1, Complex v2) {
    const Complex lo = turn(-theta);
    const Complex jump = turn(theta) - lo;
    return lo * Mat2::identity() + jump * Mat2{u1 * v1, u2 * v1, u1 * v2, u2 * v2};
}

double wrap_integer(Complex z) { return std::abs(z - std::round(z.real())); }

}  // namespace

Mat2 Mat2::inverse() const {
    const Complex det_value = det();
    return {d / det_value, -b / det_value, -c / det_value, a / det_value};
}

Mat2 Mat2::adjoint() const { return {std::conj(a), std::conj(c), std::conj(b), std::conj(d)}; }

double Mat2::distance(const Mat2& other) const {
    return std::max({std::abs(a - other.a), std::abs(b - other.b), std::abs(c - other.c),
                     std::abs(d - other.d)});
}

MonodromyMatrices build_matrices(const MonodromyPoint& point, Complex chart_scale) {
    const auto& [th0, tht, th1, thinf] = point.momenta;
    const Complex sigma = point.sigma;
    const Complex sin_two_t = std::sin(2.0 * pi * tht);
    const Complex sin_two_inf = std::sin(2.0 * pi * thinf);
    const Complex sin_two_sigma = std::sin(2.0 * pi * sigma);
    require_nonzero(sin_two_t, "sin 2 pi theta_t");
    require_nonzero(sin_two_inf, "sin 2 pi theta_inf");
    require_nonzero(sin_two_sigma, "sin 2 pi sigma");
    require_nonzero(chart_scale, "chart scale");

    const Complex u1 = sin_pi(tht + sigma - th0) * sin_pi(tht + sigma + th0) / (sin_two_t * sin_two_sigma) *
                       turn(-sigma) / chart_scale;
    const Complex v1 = chart_scale * turn(sigma);
    const Complex u2 = -sin_pi(tht - sigma - th0) * sin_pi(tht - sigma + th0) / (sin_two_t * sin_two_sigma);
    const Mat2 mt = rank_one_monodromy(tht, u1, u2, v1, 1.0);

    const Mat2 pair = Mat2::diagonal(turn(sigma), turn(-sigma));
    const Mat2 m0 = pair * mt.inverse();

    const Complex ratio_den = sin_pi(thinf - th1 + sigma);
    require_nonzero(ratio_den, "sin pi (theta_inf - theta_1 + sigma)");
    const Complex w1 =
        -sin_pi(thinf + sigma - th1) * sin_pi(thinf - sigma + th1) / (sin_two_inf * sin_two_sigma);
    const Complex z1 = sin_pi(thinf - th1 - sigma) / ratio_den;
    const Complex w2 =
        sin_pi(thinf + sigma - th1) * sin_pi(thinf + sigma + th1) / (sin_two_inf * sin_two_sigma);
    Mat2 minf = rank_one_monodromy(thinf, w1, w2, z1, 1.0);
    Mat2 m1 = pair.inverse() * minf.inverse();

    // Fix the relative diagonal gauge of the two halves so that the twist
    // enters tr(M_1 M_t) exactly as in the trace parametrization.
    const Complex coupling = m1.b * mt.c;
    require_nonzero(coupling, "off-diagonal coupling");
    const Complex target = -4.0 * sin_pi(th0 + tht - sigma) * sin_pi(-th0 + tht - sigma) *
                           sin_pi(thinf + th1 - sigma) * sin_pi(-thinf + th1 - sigma) /
                           (sin_two_sigma * sin_two_sigma);
    const Complex scale = std::sqrt(point.twist * target / coupling);
    require_nonzero(scale, "gauge scale");
    const Mat2 gauge = Mat2::diagonal(scale, 1.0 / scale);
    const Mat2 gauge_inv = Mat2::diagonal(1.0 / scale, scale);
    m1 = gauge * m1 * gauge_inv;
    minf = gauge * minf * gauge_inv;
    return {m0, mt, m1, minf};
}

Traces traces_from_point(const MonodromyPoint& point) {
    const auto& [th0, tht, th1, thinf] = point.momenta;
    const Complex sigma = point.sigma;
    const Complex s = point.twist;
    if (s == Complex(0.0)) throw DomainError("traces_from_point: zero twist");
    const Complex sin_two_sigma = std::sin(2.0 * pi * sigma);
    require_nonzero(sin_two_sigma, "sin 2 pi sigma");

    Traces tr;
    tr.zero = two_cos(th0);
    tr.t = two_cos(tht);
    tr.one = two_cos(th1);
    tr.infinity = two_cos(thinf);
    tr.zero_t = two_cos(sigma);

    Complex twisted = 0.0;
    Complex untwisted = 0.0;
    for (const double e : {1.0, -1.0}) {
        twisted += std::pow(s, e) * sin_pi(th0 + tht - e * sigma) * sin_pi(-th0 + tht - e * sigma) *
                   sin_pi(thinf + th1 - e * sigma) * sin_pi(-thinf + th1 - e * sigma);
        untwisted += std::pow(s, -e) * turn(e * sigma) * sin_pi(th0 + tht + e * sigma) *
                     sin_pi(-th0 + tht + e * sigma) * sin_pi(thinf + th1 + e * sigma) *
                     sin_pi(-thinf + th1 + e * sigma);
    }
    const Complex sin_sq = sin_two_sigma * sin_two_sigma;
    tr.one_t = (0.5 * (tr.t * tr.one + tr.zero * tr.infinity) -
                0.25 * (tr.zero * tr.one + tr.t * tr.infinity) * tr.zero_t - 4.0 * twisted) /
               sin_sq;
    tr.zero_one = (0.5 * (tr.zero * tr.one + tr.t * tr.infinity) -
                   0.25 * (tr.t * tr.one + tr.zero * tr.infinity) * tr.zero_t + 4.0 * untwisted) /
                  sin_sq;
    return tr;
}

Traces traces_from_matrices(const MonodromyMatrices& m) {
    return {m.zero.trace(),           m.t.trace(),          m.one.trace(), m.infinity.trace(),
            (m.zero * m.t).trace(), (m.one * m.t).trace(), (m.zero * m.one).trace()};
}

Complex jimbo_fricke(const Traces& p) {
    return p.zero_t * p.one_t * p.zero_one + p.zero_t * p.zero_t + p.one_t * p.one_t +
           p.zero_one * p.zero_one - p.zero_t * (p.zero * p.t + p.one * p.infinity) -
           p.one_t * (p.one * p.t + p.zero * p.infinity) -
           p.zero_one * (p.zero * p.one + p.t * p.infinity) + p.zero * p.t * p.one * p.infinity +
           p.zero * p.zero + p.t * p.t + p.one * p.one + p.infinity * p.infinity - 4.0;
}

Traces exchange_sheets(const Traces& p) {
    Traces out = p;
    out.zero_one = p.t * p.infinity + p.zero * p.one - p.zero_t * p.one_t - p.zero_one;
    return out;
}

MonodromyPoint antiholomorphic_image(const MonodromyPoint& point) {
    return {point.momenta.negated(), point.sigma, 1.0 / point.twist};
}

namespace {

// prod_eps sin pi(th1 + sigma + eps thinf) sin pi(tht + sigma + eps th0) over the
// same product at -sigma.
Complex twist_reflection_factor(const Momenta& m, Complex sigma) {
    Complex num = 1.0;
    Complex den = 1.0;
    for (const double e : {1.0, -1.0}) {
        num *= sin_pi(m.one + sigma + e * m.infinity) * sin_pi(m.t + sigma + e * m.zero);
        den *= sin_pi(m.one - sigma + e * m.infinity) * sin_pi(m.t - sigma + e * m.zero);
    }
    require_nonzero(num, "twist reflection numerator");
    require_nonzero(den, "twist reflection denominator");
    return num / den;
}

}  // namespace

MonodromyPoint antiholomorphic_image_fixed_momenta(const MonodromyPoint& point) {
    return {point.momenta, point.sigma,
            twist_reflection_factor(point.momenta, point.sigma) / point.twist};
}

MonodromyPoint momentum_sign_flip(const MonodromyPoint& point) {
    return {point.momenta.negated(), point.sigma,
            point.twist / twist_reflection_factor(point.momenta, point.sigma)};
}

Traces traces_from_crossed_channel(const Momenta& momenta, Complex sigma_one_t, Complex twist_one_t) {
    const auto& [th0, tht, th1, thinf] = momenta;
    const Complex s = twist_one_t;
    const Complex sin_two_sigma = std::sin(2.0 * pi * sigma_one_t);
    require_nonzero(sin_two_sigma, "sin 2 pi sigma_1t");
    Traces tr;
    tr.zero = two_cos(th0);
    tr.t = two_cos(tht);
    tr.one = two_cos(th1);
    tr.infinity = two_cos(thinf);
    tr.one_t = two_cos(sigma_one_t);
    Complex plain = 0.0;
    Complex phased = 0.0;
    for (const double e : {1.0, -1.0}) {
        const Complex prod = sin_pi(th1 + tht + e * sigma_one_t) * sin_pi(-th1 + tht + e * sigma_one_t) *
                             sin_pi(thinf + th0 + e * sigma_one_t) * sin_pi(-thinf + th0 + e * sigma_one_t);
        plain += std::pow(s, -e) * prod;
        phased += std::pow(s, -e) * turn(-e * sigma_one_t) * prod;
    }
    const Complex sin_sq = sin_two_sigma * sin_two_sigma;
    tr.zero_t = (0.5 * (tr.t * tr.zero + tr.one * tr.infinity) -
                 0.25 * (tr.zero * tr.one + tr.t * tr.infinity) * tr.one_t - 4.0 * plain) /
                sin_sq;
    tr.zero_one = (0.5 * (tr.zero * tr.one + tr.t * tr.infinity) -
                   0.25 * (tr.t * tr.zero + tr.one * tr.infinity) * tr.one_t + 4.0 * phased) /
                  sin_sq;
    return tr;
}

namespace {

// The two expressions for the 1t-channel twist: one for s_1t and one for its
// inverse. Either can lose all digits to cancellation when the imaginary parts
// are large, or be singular at symmetric points, so every usable one is returned.
std::vector<Complex> crossed_twists(const Momenta& m, const Traces& p, Complex sigma) {
    const Complex sin_two = std::sin(2.0 * pi * sigma);
    const Complex mixed = p.zero * p.one + p.t * p.infinity;
    const Complex plain = p.t * p.zero + p.one * p.infinity;
    Complex den_up = 16.0;
    Complex den_low = 16.0;
    for (const double e : {1.0, -1.0}) {
        den_up *= sin_pi(e * m.one + m.t - sigma) * sin_pi(e * m.infinity + m.zero - sigma);
        den_low *= sin_pi(e * m.one + m.t + sigma) * sin_pi(e * m.infinity + m.zero + sigma);
    }
    const Complex num_up = -2.0 * I * sin_two * (p.zero_one + turn(-sigma) * p.zero_t) -
                           turn(-sigma) * mixed + plain;
    const Complex num_low = 2.0 * I * sin_two * (p.zero_one + turn(sigma) * p.zero_t) -
                            turn(sigma) * mixed + plain;
    constexpr double floor = 1e-10;
    std::vector<Complex> out;
    if (std::abs(den_up) >= floor) out.push_back(num_up / den_up);
    if (std::abs(num_low) >= floor) out.push_back(den_low / num_low);
    return out;
}

double reconstruction_residual(const Momenta& m, const Traces& p, const ChannelCoordinates& c) {
    const Traces rebuilt = traces_from_crossed_channel(m, c.sigma, c.twist);
    return std::abs(rebuilt.zero_t - p.zero_t) / (1.0 + std::abs(p.zero_t)) +
           std::abs(rebuilt.zero_one - p.zero_one) / (1.0 + std::abs(p.zero_one));
}

}  // namespace

namespace {

ChannelCoordinates best_twist(const Momenta& m, const Traces& p, Complex sigma, double& residual) {
    ChannelCoordinates best{sigma, 0.0};
    residual = std::numeric_limits<double>::infinity();
    for (const Complex twist : crossed_twists(m, p, sigma)) {
        if (twist == Complex(0.0)) continue;
        const ChannelCoordinates candidate{sigma, twist};
        const double r = reconstruction_residual(m, p, candidate);
        if (r < residual) {
            residual = r;
            best = candidate;
        }
    }
    return best;
}

}  // namespace

ChannelCandidates channel_candidates(const MonodromyPoint& point) {
    const Traces p = traces_from_point(point);
    const Complex sigma = std::acos(0.5 * p.one_t) / (2.0 * pi);
    require_nonzero(std::sin(2.0 * pi * sigma), "sin 2 pi sigma_1t");
    ChannelCandidates out;
    out.principal = best_twist(point.momenta, p, sigma, out.principal_residual);
    out.reflected = best_twist(point.momenta, p, -sigma, out.reflected_residual);
    if (std::isinf(out.principal_residual) && std::isinf(out.reflected_residual)) {
        throw ChartError("vanishing chart denominator: crossed twist");
    }
    return out;
}

ChannelCoordinates channel_map(const MonodromyPoint& point, double tolerance) {
    const ChannelCandidates c = channel_candidates(point);
    if (c.principal_residual <= tolerance) return c.principal;
    if (c.reflected_residual <= tolerance) return c.reflected;
    throw BranchError("channel_map: no sigma_1t candidate reproduces the traces (residuals " +
                      std::to_string(c.principal_residual) + ", " +
                      std::to_string(c.reflected_residual) + ")");
}

Complex twist_exponent(Complex twist) { return std::log(-twist) / (2.0 * pi * I); }

Complex twist_from_exponent(Complex eta) { return -turn(eta); }

AsymptoticChannelImage asymptotic_channel_map(const MonodromyPoint& point, double separation) {
    const Momenta& m = point.momenta;
    Complex sigma = point.sigma;
    Complex eta = twist_exponent(point.twist);
    if (std::abs(sigma.imag()) <= separation || std::abs(eta.imag()) <= separation ||
        std::abs(eta.imag() - sigma.imag()) <= separation) {
        throw DomainError("asymptotic_channel_map: imaginary parts not separated by the threshold");
    }
    // The limiting map is stated on the sheet Im sigma > 0 of the two-fold cover.
    if (sigma.imag() < 0.0) {
        sigma = -sigma;
        eta = -eta;
    }
    const double h = sigma.imag();
    const double sr = sign_of(eta.imag());
    AsymptoticChannelImage out;
    out.sigma = -(eta + m.t + m.one + 0.5) * sr;
    out.eta = sigma * sr + m.zero + m.t - 0.5;
    out.contour_shift = -std::abs(eta.imag()) - (m.t.imag() + m.one.imag()) * sr;
    out.contour_twist = h * sr + m.zero.imag() + m.t.imag();
    return out;
}

double asymptotic_channel_deviation(const MonodromyPoint& point, double separation) {
    const AsymptoticChannelImage approx = asymptotic_channel_map(point, separation);
    const ChannelCoordinates exact = channel_map(point);
    const Complex eta_exact = twist_exponent(exact.twist);
    const double direct = wrap_integer(approx.sigma - exact.sigma) + wrap_integer(approx.eta - eta_exact);
    const double mirrored = wrap_integer(approx.sigma + exact.sigma) + wrap_integer(approx.eta + eta_exact);
    return std::min(direct, mirrored);
}

MonodromyPoint double_braid_zero_t(const MonodromyPoint& point) {
    return {point.momenta, point.sigma, point.twist * turn(2.0 * point.sigma)};
}

MonodromyPoint crossing_braid(const MonodromyPoint& point) {
    const ChannelCoordinates c = channel_map(point);
    return {point.momenta.crossed(), c.sigma, c.twist};
}

MonodromyMatrices braid_zero_t(const MonodromyMatrices& m) {
    return {m.t, m.t.inverse() * m.zero * m.t, m.one, m.infinity};
}

MonodromyMatrices braid_t_one(const MonodromyMatrices& m) {
    return {m.zero, m.one, m.one.inverse() * m.t * m.one, m.infinity};
}

MonodromyMatrices braid_one_infinity(const MonodromyMatrices& m) {
    return {m.zero, m.t, m.infinity, m.infinity.inverse() * m.one * m.infinity};
}

MonodromyMatrices crossing_matrices(const MonodromyMatrices& m) {
    return {m.t * m.one * m.t.inverse(), m.t, m.zero, m.zero.inverse() * m.infinity * m.zero};
}

int fusion_step(double first, double second, double third) {
    const double num = std::sin(pi * (second + third - first)) * std::sin(pi * (second + third + first));
    const double den = std::sin(pi * (second - third - first)) * std::sin(pi * (second - third + first));
    if (den == 0.0) throw UndefinedError("fusion_step: vanishing denominator");
    return num / den <= 0.0 ? 1 : 0;
}

namespace {

void require_real(Complex z, const char* what) {
    if (std::abs(z.imag()) > 1e-12) throw DomainError(std::string("expected a real value: ") + what);
}

double sine_ratio(double a, double b, double sigma) {
    return std::sin(pi * (b + sigma - a)) * std::sin(pi * (b + sigma + a)) /
           (std::sin(pi * (b - sigma - a)) * std::sin(pi * (b - sigma + a)));
}

}  // namespace

double unitary_chart_scale(Complex sigma, const Momenta& m) {
    require_real(sigma, "sigma");
    require_real(m.zero, "theta_0");
    require_real(m.t, "theta_t");
    return -sine_ratio(m.zero.real(), m.t.real(), sigma.real());
}

double unitary_twist_radius(Complex sigma, const Momenta& m) {
    require_real(sigma, "sigma");
    require_real(m.zero, "theta_0");
    require_real(m.t, "theta_t");
    require_real(m.one, "theta_1");
    require_real(m.infinity, "theta_inf");
    const double s = sigma.real();
    if (fusion_step(m.zero.real(), m.t.real(), s) == 0 ||
        fusion_step(m.one.real(), m.infinity.real(), -s) == 0) {
        throw NotUnitaryError("unitary_twist_radius: point outside the SU(2) locus");
    }
    return sine_ratio(m.zero.real(), m.t.real(), s) * sine_ratio(m.infinity.real(), m.one.real(), s);
}

MonodromyPoint quarter_point(Complex sigma_zero_t, Complex sigma_one_t) {
    return {{0.25, 0.25, 0.25, 0.25}, sigma_zero_t, -turn(sigma_one_t)};
}

MonodromyMatrices quarter_matrices(Complex sigma_zero_t, Complex sigma_one_t) {
    const Mat2 m0{0.0, I * turn(sigma_zero_t), I * turn(-sigma_zero_t), 0.0};
    const Mat2 mt{0.0, -I, -I, 0.0};
    const Mat2 m1{0.0, I * turn(-sigma_one_t), I * turn(sigma_one_t), 0.0};
    return {m0, mt, m1, (m0 * mt * m1).inverse()};
}

}  // namespace taub
