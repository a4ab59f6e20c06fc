#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "cmtori/cli.hpp"

namespace cmtori {

using nlohmann::json;

OutputFormat parse_format(const std::string& name) {
    if (name == "text") return OutputFormat::text;
    if (name == "json") return OutputFormat::json;
    if (name == "csv") return OutputFormat::csv;
    throw std::invalid_argument("unknown format '" + name + "' (expected text, json or csv)");
}

const std::vector<std::string>& report_fields() {
    static const std::vector<std::string> fields{
        "spec", "h_T", "h_T1", "tamagawa", "h_K", "h_Kplus", "Q", "t", "r", "s", "S", "e_local",
        "e_exponent_total", "global_index", "route_agreement", "mu_order"};
    return fields;
}

// Non-integral values are dyadic and print exactly as JSON floats.
json to_json(const Rational& v) {
    if (v.is_integer()) return v.num();
    return static_cast<double>(v.num()) / static_cast<double>(v.den());
}

json to_json(const Interval& v) {
    if (v.is_exact()) return to_json(v.lo);
    return json::array({to_json(v.lo), to_json(v.hi)});
}

json report_row(const ClassNumberReport& rep) {
    json row;
    row["spec"] = render_spec(rep.spec);
    row["h_T"] = to_json(rep.h_T);
    row["h_T1"] = to_json(rep.h_T1);
    row["tamagawa"] = to_json(rep.tamagawa);
    row["h_K"] = rep.h_K ? json(*rep.h_K) : json(nullptr);
    row["h_Kplus"] = rep.h_Kplus;
    row["Q"] = rep.Q ? json(*rep.Q) : json(nullptr);
    row["t"] = rep.profile.t;
    row["r"] = rep.profile.r;
    row["s"] = rep.profile.s;
    row["S"] = rep.profile.S;
    json e = json::object();
    for (const auto& [p, entry] : rep.local.entries) e[std::to_string(p)] = entry.e_value;
    row["e_local"] = e;
    row["e_exponent_total"] = rep.local.total_exponent;
    if (rep.global_index.exact)
        row["global_index"] = rep.global_index.value;
    else
        row["global_index"] = json::array({1, rep.global_index.value});
    row["route_agreement"] = rep.route_agreement ? json(*rep.route_agreement) : json(nullptr);
    row["mu_order"] = rep.mu_order;
    return row;
}

namespace {

std::string cell(const json& v) {
    if (v.is_null()) return "";
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string render_rows(const std::vector<json>& rows, const std::vector<std::string>& columns,
                        OutputFormat format) {
    std::ostringstream os;
    switch (format) {
        case OutputFormat::json: {
            json doc{{"schema", 1}, {"rows", rows}};
            os << doc.dump(2) << '\n';
            break;
        }
        case OutputFormat::csv: {
            for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << csv_escape(columns[i]);
            os << '\n';
            for (const auto& row : rows) {
                for (std::size_t i = 0; i < columns.size(); ++i) {
                    if (i) os << ',';
                    os << csv_escape(row.contains(columns[i]) ? cell(row[columns[i]]) : "");
                }
                os << '\n';
            }
            break;
        }
        case OutputFormat::text: {
            std::size_t width = 0;
            for (const auto& c : columns) width = std::max(width, c.size());
            for (std::size_t r = 0; r < rows.size(); ++r) {
                if (r) os << '\n';
                for (const auto& c : columns) {
                    if (!rows[r].contains(c)) continue;
                    const auto& v = rows[r][c];
                    os << c << std::string(width - c.size(), ' ') << "  " << (v.is_null() ? "-" : cell(v)) << '\n';
                }
            }
            break;
        }
    }
    return os.str();
}

}  // namespace cmtori
