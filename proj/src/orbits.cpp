#include "taub/orbits.hpp"

#include <deque>
#include <numeric>
#include <stdexcept>

#include "taub/errors.hpp"

namespace taub {

FractionModOne::FractionModOne(std::int64_t numerator, std::int64_t denominator) {
    if (denominator == 0) throw DomainError("FractionModOne: zero denominator");
    if (denominator < 0) {
        numerator = -numerator;
        denominator = -denominator;
    }
    numerator %= denominator;
    if (numerator < 0) numerator += denominator;
    const std::int64_t g = std::gcd(numerator, denominator);
    num_ = numerator / g;
    den_ = denominator / g;
}

FractionModOne operator+(const FractionModOne& x, const FractionModOne& y) {
    const std::int64_t l = std::lcm(x.den_, y.den_);
    return {x.num_ * (l / x.den_) + y.num_ * (l / y.den_), l};
}

FractionModOne operator-(const FractionModOne& x) { return {-x.num_, x.den_}; }

TorusPoint apply_s(const TorusPoint& p) { return {p.second, -p.first}; }
TorusPoint apply_t(const TorusPoint& p) { return {p.first + p.second, p.second}; }
TorusPoint apply_s_inverse(const TorusPoint& p) { return {-p.second, p.first}; }
TorusPoint apply_t_inverse(const TorusPoint& p) { return {p.first - p.second, p.second}; }

TorusSet sl2z_orbit(std::int64_t a, std::int64_t c, std::int64_t p) {
    if (p < 1) throw DomainError("sl2z_orbit: p must be positive");
    const TorusPoint start{FractionModOne(a, p), FractionModOne(c, p)};
    TorusSet seen{start};
    std::deque<TorusPoint> frontier{start};
    while (!frontier.empty()) {
        const TorusPoint current = frontier.front();
        frontier.pop_front();
        for (const TorusPoint& next : {apply_s(current), apply_t(current), apply_s_inverse(current),
                                       apply_t_inverse(current)}) {
            if (seen.insert(next).second) frontier.push_back(next);
        }
    }
    return seen;
}

std::int64_t orbit_level(std::int64_t a, std::int64_t c, std::int64_t p) {
    return p / std::gcd(std::gcd(a, c), p);
}

TorusSet lattice_points(std::int64_t p) {
    if (p < 1) throw DomainError("lattice_points: p must be positive");
    TorusSet out;
    for (std::int64_t a = 0; a < p; ++a) {
        for (std::int64_t c = 0; c < p; ++c) out.insert({FractionModOne(a, p), FractionModOne(c, p)});
    }
    return out;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
    std::vector<std::int64_t> out;
    for (std::int64_t d = 1; d <= n; ++d) {
        if (n % d == 0) out.push_back(d);
    }
    return out;
}

int mobius(std::int64_t n) {
    if (n < 1) throw DomainError("mobius: argument must be positive");
    int sign = 1;
    for (std::int64_t f = 2; f * f <= n; ++f) {
        if (n % f != 0) continue;
        n /= f;
        if (n % f == 0) return 0;
        sign = -sign;
    }
    return n > 1 ? -sign : sign;
}

std::vector<OrbitComponent> orbit_decomposition(std::int64_t p) {
    TorusSet remaining = lattice_points(p);
    std::vector<OrbitComponent> out;
    for (const std::int64_t level : divisors(p)) {
        OrbitComponent component{level, sl2z_orbit(1, 0, level)};
        for (const auto& point : component.points) remaining.erase(point);
        out.push_back(std::move(component));
    }
    if (!remaining.empty()) throw std::logic_error("orbit_decomposition: lattice not exhausted");
    return out;
}

std::map<TorusPoint, int> mobius_inverted_measure(std::int64_t p) {
    std::map<TorusPoint, int> weights;
    for (const TorusPoint& point : lattice_points(p)) weights[point] = 0;
    for (const std::int64_t d : divisors(p)) {
        const int mu = mobius(p / d);
        if (mu == 0) continue;
        for (const TorusPoint& point : lattice_points(d)) weights[point] += mu;
    }
    return weights;
}

}  // namespace taub
