#include "report.hpp"

#include <cmath>
#include <cstdio>

namespace taub::cli {

std::string format_double(double x) {
    if (!std::isfinite(x)) return "null";
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.17g", x);
    return buffer;
}

Json complex_json(Complex z) {
    Json out = Json::object();
    out["re"] = z.real();
    out["im"] = z.imag();
    return out;
}

Json momenta_json(const Momenta& m) {
    Json out = Json::object();
    out["theta0"] = complex_json(m.zero);
    out["thetat"] = complex_json(m.t);
    out["theta1"] = complex_json(m.one);
    out["thetainf"] = complex_json(m.infinity);
    return out;
}

Json make_record(const std::string& command) {
    Json record = Json::object();
    record["schema_version"] = kSchemaVersion;
    record["command"] = command;
    for (const char* section : {"inputs", "outputs", "diagnostics", "residuals"}) record[section] = Json::object();
    return record;
}

namespace {

void indent(std::ostream& out, int depth) {
    for (int i = 0; i < depth; ++i) out << "  ";
}

void emit(std::ostream& out, const Json& value, int depth) {
    switch (value.type()) {
        case Json::value_t::object: {
            if (value.empty()) {
                out << "{}";
                return;
            }
            if (value.size() == 2 && value.contains("re") && value.contains("im")) {
                out << "{\"re\": ";
                emit(out, value["re"], depth);
                out << ", \"im\": ";
                emit(out, value["im"], depth);
                out << "}";
                return;
            }
            out << "{\n";
            bool first = true;
            for (const auto& [key, item] : value.items()) {
                if (!first) out << ",\n";
                first = false;
                indent(out, depth + 1);
                out << Json(key).dump() << ": ";
                emit(out, item, depth + 1);
            }
            out << "\n";
            indent(out, depth);
            out << "}";
            return;
        }
        case Json::value_t::array: {
            if (value.empty()) {
                out << "[]";
                return;
            }
            out << "[\n";
            for (std::size_t i = 0; i < value.size(); ++i) {
                if (i > 0) out << ",\n";
                indent(out, depth + 1);
                emit(out, value[i], depth + 1);
            }
            out << "\n";
            indent(out, depth);
            out << "]";
            return;
        }
        case Json::value_t::number_float:
            out << format_double(value.get<double>());
            return;
        default:
            out << value.dump();
    }
}

std::string csv_field(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + "\"";
}

void write_row(std::ostream& out, const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i > 0) out << ',';
        out << csv_field(row[i]);
    }
    out << '\n';
}

}  // namespace

void write_json(std::ostream& out, const Json& value) {
    emit(out, value, 0);
    out << '\n';
}

void write_csv(std::ostream& out, const CsvTable& table) {
    write_row(out, table.header);
    for (const auto& row : table.rows) write_row(out, row);
}

}  // namespace taub::cli
