#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace taub {

/// Exact rational number reduced modulo 1: 0 <= num < den, gcd(num, den) = 1.
class FractionModOne {
public:
    FractionModOne() = default;
    FractionModOne(std::int64_t numerator, std::int64_t denominator);

    [[nodiscard]] std::int64_t numerator() const { return num_; }
    [[nodiscard]] std::int64_t denominator() const { return den_; }

    friend FractionModOne operator+(const FractionModOne& x, const FractionModOne& y);
    friend FractionModOne operator-(const FractionModOne& x);
    friend FractionModOne operator-(const FractionModOne& x, const FractionModOne& y) { return x + (-y); }
    friend auto operator<=>(const FractionModOne&, const FractionModOne&) = default;

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/// A point of the torus (Q/Z)^2.
using TorusPoint = std::pair<FractionModOne, FractionModOne>;
using TorusSet = std::set<TorusPoint>;

/// Generators acting on the torus: S(x, y) = (y, -x), T(x, y) = (x + y, y).
TorusPoint apply_s(const TorusPoint& point);
TorusPoint apply_t(const TorusPoint& point);
TorusPoint apply_s_inverse(const TorusPoint& point);
TorusPoint apply_t_inverse(const TorusPoint& point);

/// Orbit of (a/p, c/p) under the group generated by S and T, by breadth-first closure.
TorusSet sl2z_orbit(std::int64_t a, std::int64_t c, std::int64_t p);

/// p / gcd(a, c, p): the exact denominator labelling the orbit of (a/p, c/p).
std::int64_t orbit_level(std::int64_t a, std::int64_t c, std::int64_t p);

/// All p^2 points (a/p, c/p) with 0 <= a, c < p.
TorusSet lattice_points(std::int64_t p);

struct OrbitComponent {
    std::int64_t level = 1;  ///< divisor of p; the component is the orbit of (1/level, 0)
    TorusSet points;
};

/// Decomposition of the p-torsion lattice into orbits, ordered by increasing level.
std::vector<OrbitComponent> orbit_decomposition(std::int64_t p);

std::vector<std::int64_t> divisors(std::int64_t n);
int mobius(std::int64_t n);

/// Signed counting measure sum_{d | p} mu(p / d) [L_{1/d}] on the p-torsion points.
std::map<TorusPoint, int> mobius_inverted_measure(std::int64_t p);

}  // namespace taub
