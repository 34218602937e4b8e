#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "report.hpp"
#include "settings.hpp"
#include "taub/blocks.hpp"
#include "taub/errors.hpp"
#include "taub/tau.hpp"
#include "taub/theories.hpp"
#include "verify.hpp"

namespace taub::cli {
namespace {

double parse_real(const std::string& text) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size()) throw DomainError("not a number: '" + text + "'");
    return value;
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

// Accepts "x", "x,y" and "x+yi" / "x-yi" / "yi".
Complex parse_complex(const std::string& raw) {
    const std::string text = trim(raw);
    if (text.empty()) throw DomainError("empty complex number");
    if (const auto comma = text.find(','); comma != std::string::npos) {
        return {parse_real(trim(text.substr(0, comma))), parse_real(trim(text.substr(comma + 1)))};
    }
    if (text.back() != 'i' && text.back() != 'j') return parse_real(text);
    const std::string body = text.substr(0, text.size() - 1);
    std::size_t split = std::string::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    auto imaginary = [](const std::string& part) {
        if (part.empty() || part == "+") return 1.0;
        if (part == "-") return -1.0;
        return parse_real(part);
    };
    if (split == std::string::npos) return {0.0, imaginary(body)};
    return {parse_real(body.substr(0, split)), imaginary(body.substr(split))};
}

std::vector<Complex> parse_grid(const std::string& text) {
    std::vector<Complex> grid;
    if (const auto colon = text.find(':'); colon != std::string::npos) {
        const auto second = text.find(':', colon + 1);
        if (second == std::string::npos) throw DomainError("grid ranges are lo:hi:count");
        const double lo = parse_real(trim(text.substr(0, colon)));
        const double hi = parse_real(trim(text.substr(colon + 1, second - colon - 1)));
        const double count = parse_real(trim(text.substr(second + 1)));
        if (count < 1 || count != std::floor(count)) throw DomainError("grid count must be a positive integer");
        const int n = static_cast<int>(count);
        for (int i = 0; i < n; ++i) grid.emplace_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
        return grid;
    }
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ';')) {
        if (!trim(item).empty()) grid.push_back(parse_complex(item));
    }
    if (grid.empty()) throw DomainError("empty grid");
    return grid;
}

Theory parse_theory(const std::string& name) {
    if (name == "gff") return Theory::FreeField;
    if (name == "rw") return Theory::RunkelWatts;
    if (name == "at") return Theory::AshkinTeller;
    if (name == "al") return Theory::AnalyticLiouville;
    throw DomainError("unknown theory '" + name + "' (expected gff, rw, at or al)");
}

const char* theory_name(Theory theory) {
    switch (theory) {
        case Theory::FreeField: return "gff";
        case Theory::RunkelWatts: return "rw";
        case Theory::AshkinTeller: return "at";
        case Theory::AnalyticLiouville: return "al";
    }
    return "";
}

// Raw option text, converted once the command line and config file are merged.
struct RawOptions {
    std::string theta0 = "0.25", thetat = "0.25", theta1 = "0.25", thetainf = "0.25";
    std::string sigma = "0.2", twist = "1", t = "0.3", tbar, grid, heights;
    std::string theory = "gff", route = "theta";
    std::vector<std::string> tolerances;
    std::string out, format;
};

bool is_quarter(const Momenta& m) {
    for (const Complex th : {m.zero, m.t, m.one, m.infinity}) {
        if (std::abs(th - 0.25) > 1e-14) return false;
    }
    return true;
}

Json spec_json(const CorrelatorSpec& spec) {
    Json j = Json::object();
    j["theory"] = theory_name(spec.theory);
    j["momenta"] = momenta_json(spec.momenta);
    switch (spec.theory) {
        case Theory::AshkinTeller:
            j["lattice_scale"] = spec.lattice_scale;
            j["sector"] = spec.sector;
            j["sector_sign"] = spec.sector_sign;
            j["route"] = spec.route == LatticeRoute::ThetaSum ? "theta" : "average";
            j["lattice_cutoff"] = spec.lattice_cutoff;
            break;
        case Theory::AnalyticLiouville:
            j["contour_height"] = spec.contour_height;
            [[fallthrough]];
        case Theory::RunkelWatts:
            j["block_order"] = spec.block_order;
            j["nodes_per_panel"] = spec.quadrature.nodes_per_panel;
            j["panel_width"] = spec.quadrature.panel_width;
            j["cutoff"] = spec.quadrature.cutoff;
            j["max_depth"] = spec.quadrature.max_depth;
            break;
        case Theory::FreeField:
            break;
    }
    return j;
}

Json cmd_block(const Settings& s) {
    Json record = make_record("block");
    record["inputs"]["momenta"] = momenta_json(s.momenta);
    record["inputs"]["sigma"] = complex_json(s.sigma);
    record["inputs"]["t"] = complex_json(s.t);
    record["inputs"]["order"] = s.order;
    record["inputs"]["winding"] = s.winding;
    record["inputs"]["nome_resummation"] = s.nome;

    const BlockSeries series = block_series(s.momenta, s.sigma, s.order);
    BlockOptions options;
    options.tolerance = s.tolerances.get("block_tolerance");
    options.nome_resummation = s.nome;
    const BlockValue v = block_eval(series, s.t, s.winding, options);
    record["outputs"]["value"] = complex_json(v.value);
    record["outputs"]["leading_exponent"] = complex_json(series.leading_exponent);
    Json coefficients = Json::array();
    for (const Complex c : series.coefficients) coefficients.push_back(complex_json(c));
    record["outputs"]["coefficients"] = std::move(coefficients);
    record["diagnostics"]["truncation_estimate"] = v.truncation_estimate;

    std::optional<Complex> closed;
    if (is_quarter(s.momenta)) {
        closed = quarter_block(s.sigma, s.t, s.winding);
        record["diagnostics"]["closed_form"] = "quarter";
    } else if (std::abs(s.momenta.sum()) < 1e-14 &&
               std::abs(s.sigma * s.sigma - (s.momenta.zero + s.momenta.t) * (s.momenta.zero + s.momenta.t)) < 1e-14) {
        closed = charge_conserving_block(s.momenta, s.t, s.winding);
        record["diagnostics"]["closed_form"] = "charge_conserving";
    }
    record["residuals"]["closed_form_residual"] =
        closed ? Json(std::abs(v.value - *closed) / std::abs(*closed)) : Json(nullptr);
    return record;
}

Json cmd_tau(const Settings& s) {
    Json record = make_record("tau");
    const MonodromyPoint point{s.momenta, s.sigma, s.twist};
    const Complex tbar = s.conjugate_side();
    record["inputs"]["momenta"] = momenta_json(s.momenta);
    record["inputs"]["sigma"] = complex_json(s.sigma);
    record["inputs"]["twist"] = complex_json(s.twist);
    record["inputs"]["t"] = complex_json(s.t);
    record["inputs"]["tbar"] = complex_json(tbar);
    record["inputs"]["n_window"] = s.tau.n_window;
    record["inputs"]["block_order"] = s.tau.block_order;

    const TauEvaluation holo = tau_series(point, s.t, s.tau, s.winding);
    const TauEvaluation glued = tautau(point, s.t, tbar, s.tau, s.winding, s.winding_bar);
    record["outputs"]["tau"] = complex_json(holo.value);
    record["outputs"]["tautau"] = complex_json(glued.value);
    record["diagnostics"]["tail_estimate"] = std::max(holo.tail_estimate, glued.tail_estimate);
    record["diagnostics"]["block_truncation"] = std::max(holo.block_truncation, glued.block_truncation);
    if (s.crossing) record["residuals"]["crossing_identity"] = crossing_identity_residual(point, s.t, s.tau);
    return record;
}

struct GridPoint {
    std::optional<CorrelatorValue> value;
    std::vector<Complex> sweep;
    std::optional<double> crossing;
    std::string error_kind;
    std::string error;
};

GridPoint evaluate_point(const Settings& s, Complex t) {
    GridPoint point;
    try {
        point.value = correlator(s.spec, t, std::conj(t));
        for (const double h : s.heights) {
            CorrelatorSpec spec = s.spec;
            spec.contour_height = h;
            point.sweep.push_back(correlator(spec, t, std::conj(t)).value);
        }
        if (s.crossing) point.crossing = crossing_residual(s.spec, t);
    } catch (const InputError& e) {
        point.error_kind = "input";
        point.error = e.what();
    } catch (const NumericalError& e) {
        point.error_kind = "numerical";
        point.error = e.what();
    }
    return point;
}

double sweep_spread(const GridPoint& p) {
    double spread = 0.0;
    for (const Complex v : p.sweep) spread = std::max(spread, std::abs(v - p.value->value) / std::abs(p.value->value));
    return spread;
}

struct Output {
    Json record;
    std::optional<CsvTable> table;
    int exit_code = 0;
};

Output cmd_correlator(const Settings& s, bool csv) {
    if (!s.heights.empty() && s.spec.theory != Theory::AnalyticLiouville) {
        throw DomainError("a height sweep needs theory = al");
    }
    const std::vector<Complex> grid = s.grid.empty() ? std::vector<Complex>{s.t} : s.grid;
    std::vector<GridPoint> points;
    for (const Complex t : grid) points.push_back(evaluate_point(s, t));

    Output out;
    out.record = make_record("correlator");
    out.record["inputs"]["spec"] = spec_json(s.spec);
    Json heights = Json::array();
    for (const double h : s.heights) heights.push_back(h);
    out.record["inputs"]["heights"] = std::move(heights);

    Json rows = Json::array();
    double worst_spread = 0.0;
    double worst_crossing = 0.0;
    int failures = 0;
    std::string first_kind;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const GridPoint& p = points[i];
        Json row = Json::object();
        row["t"] = complex_json(grid[i]);
        if (!p.value) {
            ++failures;
            if (first_kind.empty()) first_kind = p.error_kind;
            row["error"] = Json{{"kind", p.error_kind}, {"message", p.error}};
        } else {
            row["value"] = complex_json(p.value->value);
            row["tail_estimate"] = p.value->tail_estimate;
            row["quadrature_error"] = p.value->quadrature_error;
            row["block_truncation"] = p.value->block_truncation;
            row["evaluations"] = p.value->evaluations;
            if (!p.sweep.empty()) {
                Json sweep = Json::array();
                for (const Complex v : p.sweep) sweep.push_back(complex_json(v));
                row["sweep"] = std::move(sweep);
                row["sweep_spread"] = sweep_spread(p);
                worst_spread = std::max(worst_spread, sweep_spread(p));
            }
            if (p.crossing) {
                row["crossing_residual"] = *p.crossing;
                worst_crossing = std::max(worst_crossing, *p.crossing);
            }
        }
        rows.push_back(std::move(row));
    }
    out.record["outputs"]["points"] = std::move(rows);
    out.record["diagnostics"]["failed_points"] = failures;
    if (!s.heights.empty()) out.record["residuals"]["max_sweep_spread"] = worst_spread;
    if (s.crossing) out.record["residuals"]["max_crossing_residual"] = worst_crossing;
    if (failures == static_cast<int>(grid.size())) out.exit_code = first_kind == "input" ? 2 : 3;

    if (csv) {
        CsvTable table;
        table.header = {"t_re", "t_im", "value_re", "value_im", "tail_estimate", "quadrature_error",
                        "block_truncation", "evaluations"};
        for (const double h : s.heights) {
            table.header.push_back("value_re[h=" + format_double(h) + "]");
            table.header.push_back("value_im[h=" + format_double(h) + "]");
        }
        if (!s.heights.empty()) table.header.push_back("sweep_spread");
        if (s.crossing) table.header.push_back("crossing_residual");
        table.header.push_back("error");
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const GridPoint& p = points[i];
            std::vector<std::string> row{format_double(grid[i].real()), format_double(grid[i].imag())};
            if (p.value) {
                for (const double x : {p.value->value.real(), p.value->value.imag(), p.value->tail_estimate,
                                       p.value->quadrature_error, p.value->block_truncation}) {
                    row.push_back(format_double(x));
                }
                row.push_back(std::to_string(p.value->evaluations));
                for (const Complex v : p.sweep) {
                    row.push_back(format_double(v.real()));
                    row.push_back(format_double(v.imag()));
                }
                if (!s.heights.empty()) row.push_back(format_double(sweep_spread(p)));
                if (s.crossing) row.push_back(format_double(*p.crossing));
                row.emplace_back();
            } else {
                row.resize(table.header.size() - 1);
                row.push_back(p.error);
            }
            table.rows.push_back(std::move(row));
        }
        out.table = std::move(table);
    }
    return out;
}

Settings build_settings(const RawOptions& raw, Settings s) {
    s.momenta = {parse_complex(raw.theta0), parse_complex(raw.thetat), parse_complex(raw.theta1),
                 parse_complex(raw.thetainf)};
    s.sigma = parse_complex(raw.sigma);
    s.twist = parse_complex(raw.twist);
    s.t = parse_complex(raw.t);
    if (!raw.tbar.empty()) s.tbar = parse_complex(raw.tbar);
    if (!raw.grid.empty()) s.grid = parse_grid(raw.grid);
    if (!raw.heights.empty()) {
        for (const Complex h : parse_grid(raw.heights)) s.heights.push_back(h.real());
    }
    s.spec.theory = parse_theory(raw.theory);
    s.spec.momenta = s.momenta;
    if (raw.route == "theta") {
        s.spec.route = LatticeRoute::ThetaSum;
    } else if (raw.route == "average") {
        s.spec.route = LatticeRoute::TauAverage;
    } else {
        throw DomainError("unknown lattice route '" + raw.route + "' (expected theta or average)");
    }
    for (const std::string& entry : raw.tolerances) {
        const auto eq = entry.find('=');
        if (eq == std::string::npos) throw DomainError("--tol expects NAME=VALUE, got '" + entry + "'");
        s.tolerances.set(trim(entry.substr(0, eq)), parse_real(trim(entry.substr(eq + 1))));
    }
    apply_tolerances(s);
    return s;
}

void emit(const Output& output, const RawOptions& raw, std::ostream& out) {
    auto write = [&](std::ostream& stream) {
        if (output.table) {
            write_csv(stream, *output.table);
        } else {
            write_json(stream, output.record);
        }
    };
    if (raw.out.empty()) {
        write(out);
        return;
    }
    std::ofstream file(raw.out);
    if (!file) throw DomainError("cannot open output file '" + raw.out + "'");
    write(file);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Tau-function evaluations and bootstrap checks for c = 1 four-point correlators",
                 "tau-bootstrap"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.set_config("--config", "", "Flat key = value file; command-line flags take precedence");

    RawOptions raw;
    Settings s;
    app.add_option("--theta0", raw.theta0, "External momentum at 0 (x, x,y or x+yi)");
    app.add_option("--thetat", raw.thetat, "External momentum at t");
    app.add_option("--theta1", raw.theta1, "External momentum at 1");
    app.add_option("--thetainf", raw.thetainf, "External momentum at infinity");
    app.add_option("--sigma", raw.sigma, "Internal momentum");
    app.add_option("--twist", raw.twist, "Twist coordinate s of the monodromy point");
    app.add_option("--t", raw.t, "Cross-ratio");
    app.add_option("--tbar", raw.tbar, "Antiholomorphic cross-ratio (default: conjugate of t)");
    app.add_option("--winding", s.winding, "Turns of t around 0");
    app.add_option("--winding-bar", s.winding_bar, "Turns of tbar around 0");
    app.add_option("--order", s.order, "Block truncation order")->check(CLI::NonNegativeNumber);
    app.add_flag("--nome", s.nome, "Sum the block in the elliptic nome");
    app.add_option("--n-window", s.tau.n_window, "Fourier modes |n| <= n_window")->check(CLI::NonNegativeNumber);
    app.add_option("--tau-block-order", s.tau.block_order, "Block order inside the tau function")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--theory", raw.theory, "gff, rw, at or al");
    app.add_option("--block-order", s.spec.block_order, "Block order inside correlator integrands")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--lattice-scale", s.spec.lattice_scale, "Ashkin-Teller N");
    app.add_option("--sector", s.spec.sector, "Ashkin-Teller half-shift epsilon (0 or 1)");
    app.add_option("--sector-sign", s.spec.sector_sign, "Ashkin-Teller sign epsilon' (0 or 1)");
    app.add_option("--route", raw.route, "Ashkin-Teller route: theta or average");
    app.add_option("--lattice-cutoff", s.spec.lattice_cutoff, "Ashkin-Teller lattice cutoff");
    app.add_option("--height", s.spec.contour_height, "Analytic Liouville contour height");
    app.add_option("--heights", raw.heights, "Extra contour heights to compare, e.g. 0.1;0.35");
    app.add_option("--nodes", s.spec.quadrature.nodes_per_panel, "Gauss-Legendre nodes per panel");
    app.add_option("--panel-width", s.spec.quadrature.panel_width, "Initial quadrature panel width");
    app.add_option("--cutoff", s.spec.quadrature.cutoff, "Initial integration cutoff");
    app.add_option("--max-cutoff", s.spec.quadrature.max_cutoff, "Largest integration cutoff");
    app.add_option("--max-depth", s.spec.quadrature.max_depth, "Panel bisection depth limit");
    app.add_option("--grid", raw.grid, "Cross-ratios: lo:hi:count or a ';' separated list");
    app.add_flag("--crossing", s.crossing, "Also report crossing residuals");
    app.add_option("--count", s.count, "Random draws or largest level, per suite");
    app.add_option("--seed", s.seed, "Seed for random draws");
    app.add_option("--tol", raw.tolerances, "Tolerance override NAME=VALUE (repeatable)");
    app.add_option("--out", raw.out, "Output path (default: standard output)");
    app.add_option("--format", raw.format, "json or csv (default: from the --out extension)");

    CLI::App* block = app.add_subcommand("block", "Evaluate one conformal block");
    CLI::App* tau = app.add_subcommand("tau", "Evaluate the tau function and its glued square");
    CLI::App* correlator_cmd = app.add_subcommand("correlator", "Evaluate a correlator on a grid");
    CLI::App* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("suite", s.suite, "traces, crossing, theories or orbits")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "tau-bootstrap: " << e.what() << '\n';
        return 2;
    }

    try {
        const Settings settings = build_settings(raw, s);
        bool csv = raw.format == "csv";
        if (raw.format.empty()) csv = raw.out.size() >= 4 && raw.out.substr(raw.out.size() - 4) == ".csv";
        if (!raw.format.empty() && raw.format != "csv" && raw.format != "json") {
            throw DomainError("unknown format '" + raw.format + "'");
        }
        Output output;
        if (*block) {
            output.record = cmd_block(settings);
        } else if (*tau) {
            output.record = cmd_tau(settings);
        } else if (*correlator_cmd) {
            output = cmd_correlator(settings, csv);
        } else if (*verify) {
            bool passed = false;
            output.record = verify_suite(settings, passed);
            output.exit_code = passed ? 0 : 1;
        }
        emit(output, raw, out);
        return output.exit_code;
    } catch (const InputError& e) {
        err << "tau-bootstrap: input error: " << e.what() << '\n';
        return 2;
    } catch (const NumericalError& e) {
        err << "tau-bootstrap: numerical error: " << e.what() << '\n';
        return 3;
    }
}

}  // namespace taub::cli
