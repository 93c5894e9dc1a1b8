#include "zeta_ladder/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <json.hpp>
#include <ostream>

#include "zeta_ladder/errors.hpp"

namespace zeta_ladder::report {

namespace {

std::string csv_field(const Value& v) {
    if (const auto* d = std::get_if<double>(&v)) return format_number(*d);
    if (const auto* i = std::get_if<long long>(&v)) return std::to_string(*i);
    if (const auto* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
    const auto& s = std::get<std::string>(v);
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + '"';
}

nlohmann::ordered_json json_value(const Value& v) {
    if (const auto* d = std::get_if<double>(&v)) {
        if (!std::isfinite(*d)) return nullptr;
        // Round-trip through 12 digits so the shortest repr matches the CSV.
        return std::strtod(format_number(*d).c_str(), nullptr);
    }
    if (const auto* i = std::get_if<long long>(&v)) return *i;
    if (const auto* b = std::get_if<bool>(&v)) return *b;
    return std::get<std::string>(v);
}

}  // namespace

Format parse_format(const std::string& name) {
    if (name == "csv") return Format::csv;
    if (name == "json-lines" || name == "jsonl") return Format::json_lines;
    throw PreconditionError("unknown output format '" + name + "' (csv or json-lines)");
}

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

void write_records(std::ostream& out, Format format, const std::vector<Record>& records) {
    if (format == Format::json_lines) {
        for (const auto& r : records) {
            nlohmann::ordered_json j = nlohmann::ordered_json::object();
            for (const auto& [key, value] : r) j[key] = json_value(value);
            out << j.dump() << '\n';
        }
        return;
    }
    if (records.empty()) return;
    for (std::size_t i = 0; i < records.front().size(); ++i) {
        out << (i ? "," : "") << records.front()[i].first;
    }
    out << '\n';
    for (const auto& r : records) {
        for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << csv_field(r[i].second);
        out << '\n';
    }
}

}  // namespace zeta_ladder::report
