#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "suq2/cli/suites.hpp"
#include "suq2/report/report.hpp"

namespace suq2 {

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    std::string command;
    std::vector<double> qs;  // empty: the command's default list
    SuiteConfig suite;
    std::string out;         // empty: stdout
    std::string format = "json";
    std::string dump_ops;    // directory for operator dumps, empty: none
};

inline const std::map<std::string, std::vector<double>>& default_q_lists() {
    static const std::map<std::string, std::vector<double>> m = {
        {"verify-relations", {0.0, 0.3, 0.5, 0.7, 0.9}},
        {"build-omega", {0.0, 0.5}},
        {"verify-theorem", {0.3, 0.5, 0.7}},
        {"cocycle-probe", {0.2, 0.5}},
        {"sweep", {}},
    };
    return m;
}

inline void validate(RunConfig& c) {
    const auto& d = default_q_lists();
    auto it = d.find(c.command);
    if (it == d.end()) throw ConfigError("unknown command '" + c.command + "'");
    if (c.qs.empty()) c.qs = it->second;
    for (double q : c.qs)
        if (!(q >= 0.0 && q < 1.0)) throw ConfigError("q must lie in [0,1), got " + std::to_string(q));
    const SuiteConfig& s = c.suite;
    if (s.k_max < 4 || s.m_max < 4) throw ConfigError("window must have k_max >= 4 and m_max >= 4");
    if (!(s.tol > 0.0 && s.tol < 1e-2)) throw ConfigError("tol must lie in (0, 1e-2)");
    if (s.power_budget <= 0 || s.series_budget <= 0) throw ConfigError("iteration budgets must be positive");
    if (s.samples <= 0) throw ConfigError("samples must be positive");
    if (c.format != "json" && c.format != "csv") throw ConfigError("format must be json or csv");
}

inline nlohmann::json config_json(const RunConfig& c) {
    return {{"command", c.command},     {"q", c.qs},
            {"k_max", c.suite.k_max},   {"m_max", c.suite.m_max},
            {"tol", c.suite.tol},       {"power_budget", c.suite.power_budget},
            {"series_budget", c.suite.series_budget},
            {"samples", c.suite.samples}, {"seed", c.suite.seed},
            {"format", c.format},       {"dump_ops", c.dump_ops}};
}

inline std::string q_tag(double q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

inline Report cmd_verify_relations(const RunConfig& c) {
    Report r;
    bool first = true;
    for (double q : c.qs) {
        r.add(c.command, timed([&] { return relations_suite(q, c.suite, first); }));
        r.add(c.command, timed([&] { return phi_series_suite(q, c.suite); }));
        first = false;
    }
    return r;
}

inline Report cmd_build_omega(const RunConfig& c) {
    Report r;
    for (double q : c.qs) {
        r.add(c.command, timed([&] { return lambda_suite(q, c.suite); }));
        r.add(c.command, timed([&] { return kernel_suite(q, c.suite); }));
        r.add(c.command, timed([&] { return u_tilde_suite(q, c.suite); }));
        const OmegaBuild b = build_omega(q, c.suite);
        IntertwiningOptions o;
        o.samples = c.suite.samples;
        o.seed = c.suite.seed;
        ResidualReport u = verify_intertwining(b.comult, b.bundle, {}, o);
        for (auto& k : u) k.ms += b.ms;
        r.add(c.command, u);
        if (!c.dump_ops.empty()) {
            std::filesystem::create_directories(c.dump_ops);
            const auto path = std::filesystem::path(c.dump_ops) / ("omega_q" + q_tag(q) + ".txt");
            std::ofstream f(path);
            if (!f) throw std::runtime_error("cannot write " + path.string());
            dump_operator(f, b.bundle.U, "Omega_q q=" + q_tag(q));
        }
    }
    return r;
}

inline Report cmd_verify_theorem(const RunConfig& c) {
    Report r;
    for (double q : c.qs) {
        const OmegaBuild b = build_omega(q, c.suite);
        r.add(c.command, timed([&] { return intertwining_suite(b, c.suite); }));
        r.add(c.command, timed([&] { return counit_suite(b, c.suite); }));
        r.add(c.command, timed([&] { return symbol_suite(q, c.suite); }));
        r.add(c.command, timed([&] { return witness_suite(q, c.suite); }));
    }
    r.add(c.command, timed([&] { return continuity_suite(c.suite); }));
    return r;
}

inline Report cmd_cocycle_probe(const RunConfig& c) {
    Report r;
    for (double q : c.qs) r.add(c.command, timed([&] { return cocycle_suite(q, c.suite); }));
    return r;
}

inline Report cmd_sweep(const RunConfig& c) {
    Report r;
    r.add(c.command, timed([&] { return continuity_suite(c.suite); }));
    return r;
}

inline Report run_command(RunConfig& c) {
    validate(c);
    if (c.command == "verify-relations") return cmd_verify_relations(c);
    if (c.command == "build-omega") return cmd_build_omega(c);
    if (c.command == "verify-theorem") return cmd_verify_theorem(c);
    if (c.command == "cocycle-probe") return cmd_cocycle_probe(c);
    return cmd_sweep(c);
}

inline void write_report(std::ostream& os, const Report& rep, const RunConfig& c) {
    if (c.format == "csv")
        write_csv(os, rep);
    else
        os << report_json(rep, config_json(c)).dump(2) << "\n";
}

}  // namespace suq2
