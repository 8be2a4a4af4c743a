#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cmgamma/cli.hpp"
#include "cmgamma/errors.hpp"
#include "json.hpp"

using namespace cmgamma;
using namespace cmgamma::cli;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run_cli(std::vector<std::string> args, const ineq::Registry& reg = ineq::Registry::standard()) {
    std::ostringstream out, err;
    const int code = run(args, out, err, reg);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> v;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) v.push_back(line);
    return v;
}

std::vector<std::string> split(const std::string& line, char sep = ',') {
    std::vector<std::string> v;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, sep)) v.push_back(cell);
    return v;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

class TempDir {
public:
    TempDir() {
        path_ = fs::temp_directory_path() / ("cmgamma_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                             "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    fs::path operator/(const std::string& name) const { return path_ / name; }

private:
    fs::path path_;
};

}  // namespace

TEST(ParseParams, Forms) {
    EXPECT_EQ(parse_params("a=1,b=2"), (ineq::Bindings{{"a", 1}, {"b", 2}}));
    ineq::Bindings lists;
    lists.set_list("a", {5, 5});
    lists.set_list("b", {0, 9});
    EXPECT_EQ(parse_params("a=5,5,b=0,9"), lists);
    EXPECT_EQ(parse_params("a=[5,5],b=[0,9]"), lists);
    EXPECT_EQ(parse_params(" a = 0.5 , b = 1e-3 "), (ineq::Bindings{{"a", 0.5}, {"b", 1e-3}}));
    EXPECT_THROW(parse_params("a"), UsageError);
    EXPECT_THROW(parse_params("a=x"), UsageError);
    EXPECT_THROW(parse_params("5,a=1"), UsageError);
}

TEST(ParseGrid, LinearAndLog) {
    const GridSpec g = parse_grid("1.001:50:100");
    EXPECT_FALSE(g.log);
    const std::vector<double> v = grid_values(g);
    ASSERT_EQ(v.size(), 100u);
    EXPECT_EQ(v.front(), 1.001);
    EXPECT_EQ(v.back(), 50.0);
    const std::vector<double> l = grid_values(parse_grid("0.3:20:30:log"));
    ASSERT_EQ(l.size(), 30u);
    EXPECT_EQ(l.front(), 0.3);
    EXPECT_EQ(l.back(), 20.0);
    EXPECT_NEAR(l[1] / l[0], l[29] / l[28], 1e-12);
    EXPECT_THROW(parse_grid("1:2"), UsageError);
    EXPECT_THROW(parse_grid("1:2:0"), UsageError);
    EXPECT_THROW(parse_grid("-1:2:5:log"), UsageError);
    EXPECT_THROW(parse_grid("1:2:5:cubic"), UsageError);
    EXPECT_EQ(parse_format("json"), Format::Json);
    EXPECT_THROW(parse_format("xml"), UsageError);
}

TEST(Audit, Inq1GridHolds) {
    const Outcome o = run_cli({"audit", "--id", "INQ1", "--params", "a=1,b=1", "--grid", "1.001:50:100", "--format", "csv"});
    EXPECT_EQ(o.code, 0) << o.err;
    const auto rows = lines(o.out);
    ASSERT_EQ(rows.size(), 101u);
    EXPECT_EQ(rows[0], "id,params,point,lhs_log,rhs_log,margin,holds");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto cells = split(rows[i]);
        ASSERT_EQ(cells.size(), 7u);
        EXPECT_EQ(cells[0], "INQ1");
        EXPECT_EQ(cells[6], "true");
    }
}

TEST(Audit, DeterministicOutputFiles) {
    TempDir dir;
    const std::vector<std::string> base = {"audit", "--id", "H_OMEGA", "--samples", "200", "--seed", "42", "--format", "csv", "--out"};
    auto with = [&](const fs::path& p) {
        auto a = base;
        a.push_back(p.string());
        return a;
    };
    EXPECT_EQ(run_cli(with(dir / "one.csv")).code, 0);
    EXPECT_EQ(run_cli(with(dir / "two.csv")).code, 0);
    const std::string one = slurp(dir / "one.csv");
    EXPECT_EQ(lines(one).size(), 201u);
    EXPECT_EQ(one, slurp(dir / "two.csv"));

    auto other = with(dir / "three.csv");
    other[6] = "43";
    EXPECT_EQ(run_cli(other).code, 0);
    EXPECT_NE(one, slurp(dir / "three.csv"));
}

TEST(Audit, SeedFromEnvironment) {
    const std::vector<std::string> args = {"audit", "--id", "BETA_UB", "--samples", "20"};
    ::setenv("CMGAMMA_SEED", "42", 1);
    const Outcome env42 = run_cli(args);
    ::setenv("CMGAMMA_SEED", "7", 1);
    const Outcome env7 = run_cli(args);
    auto flag = args;
    flag.insert(flag.end(), {"--seed", "42"});
    const Outcome flag42 = run_cli(flag);
    ::unsetenv("CMGAMMA_SEED");
    const Outcome deflt = run_cli(args);
    EXPECT_EQ(env42.out, deflt.out);
    EXPECT_EQ(flag42.out, deflt.out);
    EXPECT_NE(env7.out, deflt.out);
    ::setenv("CMGAMMA_SEED", "nope", 1);
    EXPECT_EQ(run_cli(args).code, 1);
    ::unsetenv("CMGAMMA_SEED");
}

TEST(Audit, JsonReport) {
    const Outcome o = run_cli({"audit", "--id", "INQ1", "--params", "a=1,b=1", "--grid", "0.5:3:6", "--format", "json"});
    EXPECT_EQ(o.code, 0);
    const auto doc = nlohmann::json::parse(o.out);
    EXPECT_EQ(doc.at("skipped").get<int>(), 2);
    ASSERT_EQ(doc.at("records").size(), 4u);
    EXPECT_EQ(doc.at("records")[0].at("params").at("a").get<double>(), 1.0);
    EXPECT_TRUE(doc.at("records")[0].at("holds").get<bool>());
}

TEST(Audit, ViolationExitCode) {
    ineq::Registry reg;
    ineq::InequalityCase c;
    c.id = "ALWAYS_FALSE";
    c.point_names = {"z"};
    c.lhs_key = "1";
    c.statement = "1 >= e";
    c.domain = [](const ineq::Bindings&, const ineq::Bindings&) -> std::optional<std::string> { return std::nullopt; };
    c.sides = [](const ineq::Bindings&, const ineq::Bindings&) { return ineq::Sides{0.0, 1.0}; };
    c.sample = [](ineq::Sampler& s) { s.point("z", [&] { return s.uniform(0, 1); }); };
    reg.add(c);
    const Outcome o = run_cli({"audit", "--id", "ALWAYS_FALSE", "--grid", "0:1:3"}, reg);
    EXPECT_EQ(o.code, 2);
    EXPECT_NE(o.out.find("false"), std::string::npos);
    EXPECT_EQ(run_cli({"audit", "--id", "ALWAYS_FALSE", "--samples", "4"}, reg).code, 2);
}

TEST(Audit, UsageErrors) {
    EXPECT_EQ(run_cli({"audit", "--id", "NOPE", "--grid", "1:2:3"}).code, 1);
    EXPECT_EQ(run_cli({"audit"}).code, 1);
    EXPECT_EQ(run_cli({"audit", "--id", "INQ1", "--params", "a=1,b=1,q=3", "--grid", "1:2:3"}).code, 1);
    EXPECT_EQ(run_cli({"audit", "--id", "INQ1", "--bogus"}).code, 1);
    EXPECT_EQ(run_cli({"frobnicate"}).code, 1);
    EXPECT_EQ(run_cli({}).code, 1);
    const Outcome base = run_cli({"audit", "--id", "BETA_UB_DRAGOMIR", "--params", "a=2,b=2"});
    EXPECT_EQ(base.code, 1);
    EXPECT_NE(base.err.find("baseline"), std::string::npos) << base.err;
}

TEST(ConfigFile, FlagsWin) {
    TempDir dir;
    const fs::path cfg = dir / "cfg.json";
    std::ofstream(cfg) << R"({"id": "INQ1", "params": {"a": 1, "b": 1}, "grid": "1.5:4:4", "format": "json"})";
    const Outcome from_file = run_cli({"audit", "--config", cfg.string()});
    EXPECT_EQ(from_file.code, 0) << from_file.err;
    EXPECT_EQ(nlohmann::json::parse(from_file.out).at("records").size(), 4u);

    const Outcome overridden = run_cli({"audit", "--config", cfg.string(), "--format", "csv", "--grid", "2:3:2"});
    EXPECT_EQ(overridden.code, 0);
    EXPECT_EQ(lines(overridden.out).size(), 3u);

    std::ofstream(dir / "bad.json") << "{not json";
    EXPECT_EQ(run_cli({"audit", "--config", (dir / "bad.json").string()}).code, 1);
    EXPECT_EQ(run_cli({"audit", "--config", (dir / "missing.json").string()}).code, 1);
}

TEST(Certify, TwoParamCertified) {
    const Outcome o = run_cli({"certify", "--family", "two-param", "--params", "a=0.5,b=0.7", "--grid", "0.3:20:30:log", "--n-max", "6"});
    EXPECT_EQ(o.code, 0) << o.err;
    const auto doc = nlohmann::json::parse(o.out);
    EXPECT_EQ(doc.at("verdict"), "certified");
    EXPECT_EQ(doc.at("exit_code"), 0);
    EXPECT_EQ(doc.at("log_derivative").at("margins").size(), 30u * 6u);
    EXPECT_EQ(doc.at("finite_difference").size(), 1u);
}

TEST(Certify, DefaultGridAndFamilies) {
    EXPECT_EQ(run_cli({"certify", "--family", "symmetric", "--params", "a=0.5"}).code, 0);
    EXPECT_EQ(run_cli({"certify", "--family", "multi-param", "--params", "a=1,2,3"}).code, 0);
    EXPECT_EQ(run_cli({"certify", "--family", "majorized", "--params", "a=3,1,b=2,2"}).code, 0);
}

TEST(Certify, MajorizationFailureIsUsageError) {
    const Outcome o = run_cli({"certify", "--family", "majorized", "--params", "a=5,5,b=0,9", "--grid", "10:20:5"});
    EXPECT_EQ(o.code, 1);
    EXPECT_NE(o.err.find("top-1"), std::string::npos) << o.err;
    EXPECT_EQ(run_cli({"certify", "--family", "two-param", "--params", "a=1,b=1", "--grid", "0.5:2:4"}).code, 1);
    EXPECT_EQ(run_cli({"certify", "--family", "cubic", "--params", "a=1"}).code, 1);
    EXPECT_EQ(run_cli({"certify", "--family", "two-param", "--params", "a=1,b=1", "--h", "0"}).code, 1);
}

TEST(Bounds, Wallis) {
    const Outcome o = run_cli({"bounds", "wallis", "--params", "z=0"});
    EXPECT_EQ(o.code, 0) << o.err;
    const auto rows = lines(o.out);
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[0], "quantity,role,source,value");
    std::map<std::string, double> by_role;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto cells = split(rows[i]);
        by_role[cells[cells.size() - 3]] = std::stod(cells.back());
    }
    EXPECT_NEAR(by_role["lower"], std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(by_role["exact"], std::sqrt(M_PI), 1e-15);
    EXPECT_NEAR(by_role["upper"], std::sqrt(M_PI), 1e-15);
}

TEST(Bounds, BetaAndErrors) {
    const Outcome o = run_cli({"bounds", "beta", "--params", "a=0.4,b=0.4", "--format", "json"});
    EXPECT_EQ(o.code, 0) << o.err;
    const auto doc = nlohmann::json::parse(o.out);
    std::map<std::string, double> by_source;
    for (const auto& row : doc) by_source[row.at("source").get<std::string>()] = row.at("value").get<double>();
    EXPECT_NEAR(by_source["BETA_UB"], 5.0, 1e-13);
    EXPECT_NEAR(by_source["BETA_UB_DRAGOMIR"], 6.25, 1e-13);
    EXPECT_EQ(run_cli({"bounds", "nonsense", "--params", "z=1"}).code, 1);
    EXPECT_EQ(run_cli({"bounds", "wallis", "--params", "z=-1"}).code, 1);
    EXPECT_FALSE(bound_group_names().empty());
}

TEST(Compare, Inq58Baselines) {
    const Outcome o = run_cli({"compare", "--id", "INQ58", "--id", "INQ58_BASELINES", "--params", "a=1", "--grid", "2.5:100:50:log"});
    EXPECT_EQ(o.code, 0) << o.err;
    const auto rows = lines(o.out);
    ASSERT_EQ(rows.size(), 51u);
    EXPECT_EQ(rows[0], "z,INQ58,INQ58_BASELINE_1,INQ58_BASELINE_2,lhs,tightest");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto cells = split(rows[i]);
        ASSERT_EQ(cells.size(), 6u);
        const double z = std::stod(cells[0]);
        EXPECT_NEAR(std::stod(cells[1]), 1.0 + 1.0 / (z * (z - 2.0)), 1e-13);
        EXPECT_NEAR(std::stod(cells[2]), (1.0 + z) / z, 1e-13);
        EXPECT_NEAR(std::stod(cells[3]), 1.0 + (z - 2.0) / ((z - 2.0) * (z - 2.0)), 1e-12);
        double best = 0.0;
        std::string best_id;
        const char* ids[] = {"INQ58", "INQ58_BASELINE_1", "INQ58_BASELINE_2"};
        for (int k = 0; k < 3; ++k) {
            if (std::stod(cells[1 + k]) > best) {
                best = std::stod(cells[1 + k]);
                best_id = ids[k];
            }
        }
        EXPECT_EQ(cells[5], best_id);
        EXPECT_GE(std::stod(cells[4]), best * (1 - 1e-12));
    }
}

TEST(Compare, BetaTighterBelowUnitSum) {
    const Outcome o = run_cli({"compare", "--id", "BETA_UB", "--id", "BETA_UB_DRAGOMIR", "--grid", "0.01:1:40"});
    EXPECT_EQ(o.code, 0) << o.err;
    const auto rows = lines(o.out);
    ASSERT_EQ(rows.size(), 1u + 40u * 40u);
    EXPECT_EQ(rows[0], "a,b,BETA_UB,BETA_UB_DRAGOMIR,lhs,tightest");
    int checked = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto cells = split(rows[i]);
        if (std::stod(cells[0]) + std::stod(cells[1]) <= 1.0) {
            EXPECT_EQ(cells[5], "BETA_UB") << rows[i];
            ++checked;
        }
    }
    EXPECT_GT(checked, 500);
}

TEST(Compare, IncompatibleIds) {
    EXPECT_EQ(run_cli({"compare", "--id", "INQ3_UB", "--id", "SYM_SANDWICH_UB", "--params", "a=0.5", "--grid", "1:2:3"}).code, 1);
}

TEST(ReportIo, FormatDouble) {
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
    EXPECT_EQ(format_double(1.0), "1");
    EXPECT_EQ(std::stod(format_double(M_PI)), M_PI);
}
