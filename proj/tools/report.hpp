#pragma once

#include <json.hpp>
#include <ostream>
#include <string>
#include <vector>

#include "taub/momenta.hpp"

namespace taub::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json complex_json(Complex z);
Json momenta_json(const Momenta& m);

/// A record with the fixed top-level layout; every section starts as an empty object.
Json make_record(const std::string& command);

/// Pretty-printed JSON with every floating-point number written to 17
/// significant digits and non-finite numbers written as null.
void write_json(std::ostream& out, const Json& value);

/// 17 significant digits, or "null" for non-finite values.
std::string format_double(double x);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

void write_csv(std::ostream& out, const CsvTable& table);

}  // namespace taub::cli
