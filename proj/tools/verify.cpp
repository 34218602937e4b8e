#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "taub/errors.hpp"
#include "taub/monodromy.hpp"
#include "taub/orbits.hpp"
#include "taub/special.hpp"

namespace taub::cli {
namespace {

class Draws {
public:
    explicit Draws(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
    Complex box(double lo, double hi, double im) { return {uniform(lo, hi), uniform(-im, im)}; }
    Momenta real_momenta() { return {uniform(0.05, 0.45), uniform(0.05, 0.45), uniform(0.05, 0.45), uniform(0.05, 0.45)}; }
    Momenta complex_momenta() { return {box(0.05, 0.45, 0.1), box(0.05, 0.45, 0.1), box(0.05, 0.45, 0.1), box(0.05, 0.45, 0.1)}; }

private:
    std::mt19937_64 engine_;
};

class Report {
public:
    explicit Report(const Tolerances& tolerances) : tolerances_(tolerances) {}

    // An exception thrown by `compute` marks the check failed.
    void check(const std::string& name, const std::string& threshold_name, const std::function<double()>& compute) {
        record(name, tolerances_.get(threshold_name), compute);
    }

    void exact(const std::string& name, const std::function<double()>& mismatches) { record(name, 0.0, mismatches); }

    [[nodiscard]] bool passed() const { return passed_; }
    [[nodiscard]] Json checks() const { return checks_; }
    [[nodiscard]] Json residuals() const { return residuals_; }

private:
    void record(const std::string& name, double threshold, const std::function<double()>& compute) {
        Json entry = Json::object();
        entry["name"] = name;
        double residual = std::numeric_limits<double>::infinity();
        try {
            residual = compute();
        } catch (const std::exception& e) {
            entry["error"] = e.what();
        }
        const bool ok = residual <= threshold;
        entry["residual"] = residual;
        entry["threshold"] = threshold;
        entry["passed"] = ok;
        passed_ = passed_ && ok;
        residuals_[name] = residual;
        checks_.push_back(std::move(entry));
    }

    const Tolerances& tolerances_;
    Json checks_ = Json::array();
    Json residuals_ = Json::object();
    bool passed_ = true;
};

double relative(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

int count_or(const Settings& s, int fallback) { return s.count > 0 ? s.count : fallback; }

void traces_suite(const Settings& s, Report& report, Json& outputs) {
    const int count = count_or(s, 200);
    Draws draws(s.seed);
    std::vector<MonodromyPoint> points;
    for (int i = 0; i < count; ++i) {
        const Momenta m = draws.complex_momenta();
        const Complex sigma = draws.box(0.05, 0.45, 0.1);
        points.push_back({m, sigma, std::polar(draws.uniform(0.5, 2.0), draws.uniform(-pi, pi))});
    }
    const std::vector<std::pair<std::string, std::function<MonodromyPoint(const MonodromyPoint&)>>> maps = {
        {"identity", [](const MonodromyPoint& p) { return p; }},
        {"antiholomorphic_image", antiholomorphic_image},
        {"antiholomorphic_image_fixed_momenta", antiholomorphic_image_fixed_momenta},
        {"momentum_sign_flip", momentum_sign_flip},
        {"double_braid_zero_t", double_braid_zero_t},
        {"crossing_braid", crossing_braid},
    };
    for (const auto& [label, map] : maps) {
        report.check("jimbo_fricke/" + label, "jimbo_fricke", [&] {
            double worst = 0.0;
            for (const MonodromyPoint& p : points) worst = std::max(worst, std::abs(jimbo_fricke(traces_from_point(map(p)))));
            return worst;
        });
    }
    outputs["count"] = count;
}

void crossing_suite(const Settings& s, Report& report, Json& outputs) {
    const int count = count_or(s, 20);
    Draws draws(s.seed);
    Json table = Json::array();
    double worst_real = 0.0;
    double worst_complex = 0.0;
    std::string failure;
    for (int i = 0; i < count; ++i) {
        const MonodromyPoint p{draws.real_momenta(), draws.box(0.1, 0.4, 0.05),
                               std::polar(draws.uniform(0.8, 1.25), draws.uniform(-pi, pi))};
        Json row = Json::object();
        row["momenta"] = momenta_json(p.momenta);
        row["sigma"] = complex_json(p.sigma);
        row["twist"] = complex_json(p.twist);
        try {
            const double real_side = crossing_identity_residual(p, 0.4, s.tau);
            const double complex_side = crossing_identity_residual(p, {0.4, 0.1}, s.tau);
            row["residual_real_t"] = real_side;
            row["residual_complex_t"] = complex_side;
            worst_real = std::max(worst_real, real_side);
            worst_complex = std::max(worst_complex, complex_side);
        } catch (const std::exception& e) {
            row["error"] = e.what();
            if (failure.empty()) failure = e.what();
        }
        table.push_back(std::move(row));
    }
    auto worst = [&](double value) {
        if (!failure.empty()) throw NumericalError(failure);
        return value;
    };
    report.check("tau_crossing/t=0.4", "tau_crossing_real", [&] { return worst(worst_real); });
    report.check("tau_crossing/t=0.4+0.1i", "tau_crossing_complex", [&] { return worst(worst_complex); });
    outputs["table"] = std::move(table);
}

CorrelatorSpec with_theory(const Settings& s, Theory theory) {
    CorrelatorSpec spec = s.spec;
    spec.theory = theory;
    return spec;
}

void theories_suite(const Settings& s, Report& report, Json& outputs) {
    const int count = count_or(s, 5);
    const Complex point{0.3, 0.1};
    Draws draws(s.seed);

    // Draws whose step supports touch a half-integer pole are rejected and redrawn.
    CorrelatorSpec rw = with_theory(s, Theory::RunkelWatts);
    Json draws_used = Json::array();
    report.check("rw/crossing", "rw_crossing", [&] {
        double worst = 0.0;
        int accepted = 0;
        for (int attempt = 0; accepted < count; ++attempt) {
            if (attempt >= 20 * count) throw DomainError("rw/crossing: too many rejected draws");
            rw.momenta = draws.real_momenta();
            std::vector<double> residuals;
            try {
                for (const double t : {0.3, 0.4, 0.5}) residuals.push_back(crossing_residual(rw, t));
            } catch (const InputError&) {
                continue;
            }
            ++accepted;
            draws_used.push_back(momenta_json(rw.momenta));
            for (double r : residuals) worst = std::max(worst, r);
        }
        return worst;
    });
    outputs["rw_draws"] = std::move(draws_used);
    report.check("rw/quarter_closed_form", "rw_closed_form", [&] {
        rw.momenta = {0.25, 0.25, 0.25, 0.25};
        return relative(correlator_rw(rw, point, std::conj(point)).value,
                        rw_quarter_closed_form(point, std::conj(point)));
    });

    CorrelatorSpec at = with_theory(s, Theory::AshkinTeller);
    report.check("at/dual_route", "at_dual_route", [&] {
        double worst = 0.0;
        for (const double scale : {1.0, 2.0}) {
            for (int e = 0; e < 4; ++e) {
                at.lattice_scale = scale;
                at.sector = e / 2;
                at.sector_sign = e % 2;
                at.route = LatticeRoute::ThetaSum;
                const Complex theta = correlator_at(at, point, std::conj(point)).value;
                at.route = LatticeRoute::TauAverage;
                worst = std::max(worst, relative(correlator_at(at, point, std::conj(point)).value, theta));
            }
        }
        return worst;
    });
    report.check("at/free_orbit", "at_free_orbit", [&] {
        const double free = std::pow(std::abs(point), -0.25) * std::pow(std::abs(1.0 - point), -0.25);
        return relative(at_free_orbit(point, std::conj(point)), free);
    });
    report.check("at/sector_permutation", "at_sector_permutation", [&] {
        return std::max(at_sector_permutation_residual(1.0, point), at_sector_permutation_residual(2.0, point));
    });
    report.check("at/monodromy", "at_monodromy", [&] {
        at.lattice_scale = 1.0;
        at.sector = 0;
        at.sector_sign = 0;
        at.route = LatticeRoute::ThetaSum;
        return monodromy_residual(at, point);
    });

    CorrelatorSpec al = with_theory(s, Theory::AnalyticLiouville);
    al.momenta = draws.real_momenta();
    outputs["al_momenta"] = momenta_json(al.momenta);
    report.check("al/height_independence", "al_height", [&] {
        al.contour_height = 0.2;
        const Complex reference = correlator_al(al, 0.4, 0.4).value;
        double worst = 0.0;
        for (const double h : {0.1, 0.35}) {
            al.contour_height = h;
            worst = std::max(worst, relative(correlator_al(al, 0.4, 0.4).value, reference));
        }
        al.contour_height = 0.2;
        return worst;
    });
    for (const double center : {0.0, 0.5}) {
        report.check(center == 0.0 ? "al/residues_at_integers" : "al/residues_at_half_integers", "al_residue",
                     [&] { return std::abs(residue_sum_check(al, point, center).total); });
    }
    report.check("al/crossing", "al_crossing", [&] { return crossing_residual(al, 0.4); });
    report.check("al/monodromy", "al_monodromy", [&] { return monodromy_residual(al, point); });
}

void orbits_suite(const Settings& s, Report& report, Json& outputs) {
    const int max_p = count_or(s, 12);
    Json sizes = Json::array();
    report.exact("orbits/decomposition", [&] {
        double mismatches = 0.0;
        for (std::int64_t p = 1; p <= max_p; ++p) {
            std::size_t total = 0;
            Json row = Json::object();
            for (const OrbitComponent& part : orbit_decomposition(p)) {
                total += part.points.size();
                row[std::to_string(part.level)] = part.points.size();
            }
            sizes.push_back(Json{{"p", p}, {"orbit_sizes", row}, {"total", total}});
            if (total != static_cast<std::size_t>(p * p)) mismatches += 1.0;
        }
        return mismatches;
    });
    outputs["decomposition"] = std::move(sizes);
    report.exact("orbits/mobius_inversion", [&] {
        double mismatches = 0.0;
        for (std::int64_t p = 1; p <= max_p; ++p) {
            const TorusSet primitive = sl2z_orbit(1, 0, p);
            std::size_t covered = 0;
            for (const auto& [point, weight] : mobius_inverted_measure(p)) {
                const int expected = primitive.count(point) ? 1 : 0;
                if (weight != expected) mismatches += 1.0;
                covered += static_cast<std::size_t>(expected);
            }
            if (covered != primitive.size()) mismatches += 1.0;
        }
        return mismatches;
    });
}

}  // namespace

Json verify_suite(const Settings& settings, bool& passed) {
    Json record = make_record("verify");
    record["inputs"]["suite"] = settings.suite;
    record["inputs"]["seed"] = settings.seed;
    record["inputs"]["count"] = settings.count;
    Report report(settings.tolerances);
    Json outputs = Json::object();
    if (settings.suite == "traces") {
        traces_suite(settings, report, outputs);
    } else if (settings.suite == "crossing") {
        crossing_suite(settings, report, outputs);
    } else if (settings.suite == "theories") {
        theories_suite(settings, report, outputs);
    } else if (settings.suite == "orbits") {
        orbits_suite(settings, report, outputs);
    } else {
        throw DomainError("unknown suite '" + settings.suite + "'");
    }
    passed = report.passed();
    outputs["checks"] = report.checks();
    outputs["passed"] = passed;
    record["outputs"] = std::move(outputs);
    record["residuals"] = report.residuals();
    Json thresholds = Json::object();
    for (const auto& [name, value] : settings.tolerances.all()) thresholds[name] = value;
    record["diagnostics"]["tolerances"] = std::move(thresholds);
    return record;
}

}  // namespace taub::cli
