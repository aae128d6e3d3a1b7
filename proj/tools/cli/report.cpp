#include "report.hpp"

#include <hosc/version.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace hosc::cli {
namespace {

std::string format12(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

Json to_json(const Cell& c)
{
    return std::visit(
        [](const auto& v) -> Json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) return nullptr;
            else if constexpr (std::is_same_v<T, double>) return number(v);
            else return v;
        },
        c);
}

std::string csv_field(const Cell& c)
{
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) return "";
            else if constexpr (std::is_same_v<T, double>) return std::isfinite(v) ? format12(v) : "";
            else if constexpr (std::is_same_v<T, long long>) return std::to_string(v);
            else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
            else {
                if (v.find_first_of(",\"\n") == std::string::npos) return v;
                std::string q = "\"";
                for (char ch : v) {
                    if (ch == '"') q += '"';
                    q += ch;
                }
                return q + '"';
            }
        },
        c);
}

} // namespace

Json number(double x)
{
    if (!std::isfinite(x)) return nullptr;
    return std::strtod(format12(x).c_str(), nullptr);
}

std::string to_json(const Report& r)
{
    Json results = Json::array();
    for (const auto& row : r.rows) {
        Json obj = Json::object();
        for (std::size_t i = 0; i < r.columns.size() && i < row.size(); ++i) obj[r.columns[i]] = to_json(row[i]);
        results.push_back(std::move(obj));
    }
    Json out = Json::object();
    out["command"] = r.command;
    out["params"] = r.params;
    out["results"] = std::move(results);
    out["residuals"] = r.residuals;
    out["version"] = kVersion;
    return out.dump(2) + "\n";
}

std::string to_csv(const Report& r)
{
    std::string out;
    for (std::size_t i = 0; i < r.columns.size(); ++i) out += (i ? "," : "") + r.columns[i];
    out += "\n";
    for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_field(row[i]);
        out += "\n";
    }
    return out;
}

} // namespace hosc::cli
