#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "suq2/core/check.hpp"

namespace suq2 {

struct ReportRow {
    std::string command;
    Check check;

    double q() const {
        auto it = check.params.find("q");
        return it == check.params.end() ? -1.0 : it->second;
    }
};

struct ReportSummary {
    int pass = 0, fail = 0, measured = 0;
};

class Report {
public:
    void add(const std::string& command, const ResidualReport& rows) {
        for (const auto& c : rows) rows_.push_back({command, c});
    }
    void add(const std::string& command, const Check& c) { rows_.push_back({command, c}); }

    // Rows in (command, q, name) order, so output does not depend on run order.
    std::vector<ReportRow> sorted() const {
        std::vector<ReportRow> r = rows_;
        std::stable_sort(r.begin(), r.end(), [](const ReportRow& a, const ReportRow& b) {
            if (a.command != b.command) return a.command < b.command;
            if (a.q() != b.q()) return a.q() < b.q();
            return a.check.name < b.check.name;
        });
        return r;
    }

    ReportSummary summary() const {
        ReportSummary s;
        for (const auto& r : rows_) switch (r.check.verdict) {
                case Verdict::Pass: ++s.pass; break;
                case Verdict::Fail: ++s.fail; break;
                case Verdict::Measured: ++s.measured; break;
            }
        return s;
    }
    // Measured rows never count against the run.
    bool ok() const { return summary().fail == 0; }
    bool empty() const { return rows_.empty(); }
    const std::vector<ReportRow>& rows() const { return rows_; }

private:
    std::vector<ReportRow> rows_;
};

// Non-finite numbers have no JSON literal; they are written as strings.
inline nlohmann::json json_number(double x) {
    if (std::isfinite(x)) return x;
    return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
}

inline nlohmann::json row_json(const ReportRow& r) {
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [k, v] : r.check.params) params[k] = json_number(v);
    return {{"command", r.command},
            {"name", r.check.name},
            {"anchor", r.check.anchor},
            {"params", params},
            {"residual", json_number(r.check.residual)},
            {"budget", json_number(r.check.budget)},
            {"verdict", verdict_name(r.check.verdict)},
            {"ms", r.check.ms}};
}

inline nlohmann::json report_json(const Report& rep, const nlohmann::json& config) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : rep.sorted()) rows.push_back(row_json(r));
    const ReportSummary s = rep.summary();
    return {{"config", config},
            {"rows", rows},
            {"summary", {{"pass", s.pass}, {"fail", s.fail}, {"measured", s.measured}}}};
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline const char* kCsvHeader = "command,q,check,anchor,residual,budget,verdict,ms";

inline void write_csv(std::ostream& os, const Report& rep) {
    os << kCsvHeader << "\n";
    std::ostringstream num;
    const auto fmt = [&num](double x) {
        num.str("");
        num << std::setprecision(10) << x;
        return num.str();
    };
    for (const auto& r : rep.sorted()) {
        os << csv_field(r.command) << "," << (r.q() < 0 ? std::string() : fmt(r.q())) << "," << csv_field(r.check.name)
           << "," << csv_field(r.check.anchor) << "," << fmt(r.check.residual) << "," << fmt(r.check.budget) << ","
           << verdict_name(r.check.verdict) << "," << fmt(r.check.ms) << "\n";
    }
}

}  // namespace suq2
