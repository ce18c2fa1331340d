#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "suq2/cli/commands.hpp"

using namespace suq2;

namespace {

Check row(const std::string& name, double q, Verdict v) {
    Check c = Check::gated(name, "anchor, with comma", 1e-9, 1e-8);
    c.verdict = v;
    return c.with("q", q);
}

RunConfig config(const std::string& cmd, std::vector<double> qs = {}) {
    RunConfig c;
    c.command = cmd;
    c.qs = std::move(qs);
    return c;
}

}  // namespace

TEST(Validate, FillsDefaultQList) {
    RunConfig c = config("verify-theorem");
    validate(c);
    EXPECT_EQ(c.qs, (std::vector<double>{0.3, 0.5, 0.7}));
}

TEST(Validate, RejectsBadInput) {
    for (double q : {1.0, -0.1, 1.5}) {
        RunConfig c = config("verify-relations", {q});
        EXPECT_THROW(validate(c), ConfigError) << q;
    }
    RunConfig c = config("no-such-command");
    EXPECT_THROW(validate(c), ConfigError);
    c = config("sweep");
    c.suite.k_max = 3;
    EXPECT_THROW(validate(c), ConfigError);
    c = config("sweep");
    c.suite.tol = 0.0;
    EXPECT_THROW(validate(c), ConfigError);
    c = config("sweep");
    c.suite.samples = 0;
    EXPECT_THROW(validate(c), ConfigError);
    c = config("sweep");
    c.format = "xml";
    EXPECT_THROW(validate(c), ConfigError);
}

TEST(Report, MeasuredRowsDoNotFailTheRun) {
    Report r;
    r.add("x", row("a", 0.5, Verdict::Pass));
    r.add("x", row("b", 0.5, Verdict::Measured));
    EXPECT_TRUE(r.ok());
    r.add("x", row("c", 0.5, Verdict::Fail));
    EXPECT_FALSE(r.ok());
    const auto s = r.summary();
    EXPECT_EQ(s.pass, 1);
    EXPECT_EQ(s.fail, 1);
    EXPECT_EQ(s.measured, 1);
}

TEST(Report, SortedByCommandQAndName) {
    Report r;
    r.add("y", row("a", 0.1, Verdict::Pass));
    r.add("x", row("b", 0.5, Verdict::Pass));
    r.add("x", row("a", 0.5, Verdict::Pass));
    r.add("x", row("z", 0.2, Verdict::Pass));
    const auto s = r.sorted();
    ASSERT_EQ(s.size(), 4u);
    EXPECT_EQ(s[0].check.name, "z");
    EXPECT_EQ(s[1].check.name, "a");
    EXPECT_EQ(s[2].check.name, "b");
    EXPECT_EQ(s[3].command, "y");
}

TEST(Report, JsonSchema) {
    Report r;
    r.add("sweep", row("a", 0.5, Verdict::Measured));
    Check inf = Check::gated("inf", "", std::numeric_limits<double>::infinity(), 1.0);
    r.add("sweep", inf);
    RunConfig c = config("sweep");
    validate(c);
    const auto j = nlohmann::json::parse(report_json(r, config_json(c)).dump());
    for (const char* k : {"config", "rows", "summary"}) EXPECT_TRUE(j.contains(k)) << k;
    for (const char* k : {"command", "q", "k_max", "m_max", "tol", "power_budget", "series_budget", "samples", "seed"})
        EXPECT_TRUE(j["config"].contains(k)) << k;
    ASSERT_EQ(j["rows"].size(), 2u);
    for (const auto& x : j["rows"])
        for (const char* k : {"command", "name", "anchor", "params", "residual", "budget", "verdict", "ms"})
            EXPECT_TRUE(x.contains(k)) << k;
    EXPECT_EQ(j["summary"]["measured"], 1);
    EXPECT_EQ(j["summary"]["fail"], 1);
    EXPECT_EQ(j["rows"][0]["residual"], "inf");
}

TEST(Report, CsvQuotesFields) {
    Report r;
    r.add("sweep", row("say \"hi\"", 0.25, Verdict::Pass));
    std::ostringstream os;
    write_csv(os, r);
    std::istringstream is(os.str());
    std::string header, line;
    std::getline(is, header);
    std::getline(is, line);
    EXPECT_EQ(header, kCsvHeader);
    EXPECT_EQ(line.rfind("sweep,0.25,\"say \"\"hi\"\"\",\"anchor, with comma\",", 0), 0u) << line;
    EXPECT_NE(line.find(",pass,"), std::string::npos);
}

TEST(Commands, VerifyRelationsPassesAtZero) {
    RunConfig c = config("verify-relations", {0.0});
    const Report r = run_command(c);
    EXPECT_TRUE(r.ok());
    EXPECT_EQ(r.summary().pass, 8);
}

TEST(Commands, BuildOmegaDumpsOperator) {
    const auto dir = std::filesystem::temp_directory_path() / "suq2_dump_test";
    std::filesystem::remove_all(dir);
    RunConfig c = config("build-omega", {0.0});
    c.dump_ops = dir.string();
    const Report r = run_command(c);
    EXPECT_TRUE(r.ok());
    std::ifstream f(dir / "omega_q0.txt");
    ASSERT_TRUE(f.good());
    std::string first;
    std::getline(f, first);
    EXPECT_EQ(first.rfind("# Omega_q q=0", 0), 0u) << first;
    std::filesystem::remove_all(dir);
}
