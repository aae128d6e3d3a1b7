#pragma once

#include <json.hpp>

#include <string>
#include <variant>
#include <vector>

namespace hosc::cli {

using Json = nlohmann::ordered_json;

/// monostate serializes as null (JSON) or an empty field (CSV).
using Cell = std::variant<std::monostate, double, long long, bool, std::string>;

struct Report {
    std::string command;
    Json params = Json::object();
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    Json residuals = Json::object();
    /// Printed on stderr; not part of the serialized output.
    std::vector<std::string> warnings;
    bool ok = true;
};

/// Doubles rounded to 12 significant digits; non-finite values become null.
[[nodiscard]] Json number(double x);

/// {"command", "params", "results", "residuals", "version"}, two-space indent.
[[nodiscard]] std::string to_json(const Report& r);
/// Header row then one line per result row.
[[nodiscard]] std::string to_csv(const Report& r);

} // namespace hosc::cli
