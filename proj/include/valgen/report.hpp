#pragma once

// Report tables rendered as TSV, Markdown or JSON. All numbers are exact
// strings; the JSON form carries a schema version and the run configuration.

#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "valgen/error.hpp"

namespace valgen {

enum class Format { Tsv, Json, Md };

inline Format parse_format(const std::string& s) {
    if (s == "tsv") return Format::Tsv;
    if (s == "json") return Format::Json;
    if (s == "md") return Format::Md;
    fail(ErrorKind::BadParams, "unknown format '" + s + "' (expected tsv, json or md)");
}

constexpr int kSchemaVersion = 1;

struct Report {
    std::string title;
    std::vector<std::pair<std::string, std::string>> config; // ordered header fields
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> notes;
    bool ok = true;

    void add_row(std::vector<std::string> row) {
        if (row.size() != columns.size()) fail(ErrorKind::BadParams, "row width does not match columns");
        rows.push_back(std::move(row));
    }
};

inline std::string render_tsv(const Report& r) {
    std::ostringstream os;
    os << "# " << r.title << "\n";
    for (const auto& [k, v] : r.config) os << "# " << k << "=" << v << "\n";
    for (std::size_t i = 0; i < r.columns.size(); ++i) os << (i ? "\t" : "") << r.columns[i];
    os << "\n";
    for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "\t" : "") << row[i];
        os << "\n";
    }
    for (const auto& n : r.notes) os << "# " << n << "\n";
    os << "# status=" << (r.ok ? "ok" : "FAIL") << "\n";
    return os.str();
}

inline std::string render_md(const Report& r) {
    std::ostringstream os;
    os << "## " << r.title << "\n\n";
    for (const auto& [k, v] : r.config) os << "- " << k << ": `" << v << "`\n";
    if (!r.config.empty()) os << "\n";
    if (!r.columns.empty()) {
        os << "|";
        for (const auto& c : r.columns) os << " " << c << " |";
        os << "\n|";
        for (std::size_t i = 0; i < r.columns.size(); ++i) os << "---|";
        os << "\n";
        for (const auto& row : r.rows) {
            os << "|";
            for (const auto& cell : row) os << " " << cell << " |";
            os << "\n";
        }
        os << "\n";
    }
    for (const auto& n : r.notes) os << "> " << n << "\n";
    os << "\nstatus: " << (r.ok ? "ok" : "FAIL") << "\n";
    return os.str();
}

inline nlohmann::ordered_json to_json(const Report& r) {
    nlohmann::ordered_json j;
    j["schema"] = kSchemaVersion;
    j["title"] = r.title;
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.config) cfg[k] = v;
    j["config"] = cfg;
    j["columns"] = r.columns;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : r.rows) {
        nlohmann::ordered_json o;
        for (std::size_t i = 0; i < row.size(); ++i) o[r.columns[i]] = row[i];
        rows.push_back(o);
    }
    j["rows"] = rows;
    j["notes"] = r.notes;
    j["ok"] = r.ok;
    return j;
}

inline std::string render(const Report& r, Format f) {
    switch (f) {
    case Format::Tsv: return render_tsv(r);
    case Format::Md: return render_md(r);
    case Format::Json: return to_json(r).dump(2) + "\n";
    }
    return {};
}

/// Several reports in one document; JSON output is a single object.
inline std::string render_all(const std::vector<Report>& rs, Format f) {
    if (f == Format::Json) {
        nlohmann::ordered_json j;
        j["schema"] = kSchemaVersion;
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        bool ok = true;
        for (const auto& r : rs) {
            arr.push_back(to_json(r));
            ok = ok && r.ok;
        }
        j["reports"] = arr;
        j["ok"] = ok;
        return j.dump(2) + "\n";
    }
    std::string out;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        if (i) out += "\n";
        out += render(rs[i], f);
    }
    return out;
}

} // namespace valgen
