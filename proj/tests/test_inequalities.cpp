#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "cmgamma/errors.hpp"
#include "cmgamma/inequalities.hpp"
#include "cmgamma/specfun.hpp"

using namespace cmgamma;
using namespace cmgamma::ineq;

namespace {

const Registry& reg() { return Registry::standard(); }

std::vector<Bindings> z_points(std::initializer_list<double> zs) {
    std::vector<Bindings> v;
    for (double z : zs) v.push_back(Bindings{{"z", z}});
    return v;
}

}  // namespace

TEST(Registry, ListsKnownIds) {
    const std::vector<CaseSummary> list = registry_list();
    std::set<std::string> ids;
    for (const CaseSummary& c : list) ids.insert(c.id);
    EXPECT_EQ(ids.size(), list.size());
    EXPECT_GE(list.size(), 20u);
    for (const char* id :
         {"INQ1", "MULTI_GE1", "MAJOR_GE1", "MEAN2", "MEAN2_SHIFT", "SYM_GE1", "INQ3_LB", "INQ3_UB",
          "SYM_SANDWICH_LB", "SYM_SANDWICH_UB", "HALF_SANDWICH_LB", "HALF_SANDWICH_UB", "HALF_WALLIS_LB",
          "HALF_WALLIS_UB", "HALF_RATIO_LB", "HALF_RATIO_UB", "H_OMEGA", "G_LE1", "PSI_XY", "PSI_XY_AB",
          "INQ51", "INQ53", "BETA_UB", "BETA_UB_B1", "BETA_UB_A1", "BETA_UB_DRAGOMIR", "INQ54", "INQ55",
          "DUP_SANDWICH_LB", "DUP_SANDWICH_UB", "INQ56", "INQ56_RECIP", "INQ57_LB", "INQ57_UB", "INQ58",
          "INQ58_BASELINE_1", "INQ58_BASELINE_2"}) {
        EXPECT_TRUE(ids.count(id)) << id;
    }
}

TEST(Registry, StableOrderAndRoles) {
    const auto first = registry_list();
    const auto second = registry_list();
    ASSERT_EQ(first.size(), second.size());
    for (std::size_t i = 0; i < first.size(); ++i) EXPECT_EQ(first[i].id, second[i].id);
    EXPECT_EQ(reg().get("BETA_UB_DRAGOMIR").role, Role::Baseline);
    EXPECT_EQ(reg().get("INQ58_BASELINE_2").role, Role::Baseline);
    EXPECT_EQ(reg().get("INQ1").role, Role::Claim);
    EXPECT_EQ(reg().resolve("INQ3"), (std::vector<std::string>{"INQ3_LB", "INQ3_UB"}));
    EXPECT_EQ(reg().resolve("INQ1"), std::vector<std::string>{"INQ1"});
    EXPECT_THROW(reg().get("NOPE"), UsageError);
    EXPECT_THROW(reg().resolve("NOPE"), UsageError);
}

TEST(Bindings, RoundTrip) {
    Bindings b{{"a", 1.0}, {"b", 0.1}};
    b.set_list("c", {3.0, 4.0});
    EXPECT_EQ(b.at("a"), 1.0);
    EXPECT_EQ(b.list("c"), (std::vector<double>{3.0, 4.0}));
    EXPECT_TRUE(b.has_list("c"));
    EXPECT_FALSE(b.has_list("a"));
    EXPECT_EQ(b.to_string(), "a=1;b=0.10000000000000001;c1=3;c2=4");
    b.set("a", 2.0);
    EXPECT_EQ(b.at("a"), 2.0);
    EXPECT_EQ(b.size(), 4u);
    EXPECT_THROW(b.at("zz"), UsageError);
}

TEST(Margin, Examples) {
    EXPECT_NEAR(margin("INQ1", Bindings{{"a", 1}, {"b", 1}}, Bindings{{"z", 2}}), std::numbers::ln2, 1e-15);
    EXPECT_NEAR(margin("INQ1", std::vector<double>{1, 1}, std::vector<double>{2}), std::numbers::ln2, 1e-15);
    for (double t : {0.9, 1.0, 3.7, 55.0, 1e4}) {
        EXPECT_EQ(margin("H_OMEGA", Bindings{{"a", 0.3}, {"b", 0.6}}, Bindings{{"x", t}, {"y", t}}), 0.0) << t;
    }
    EXPECT_LE(std::abs(margin("INQ3_UB", Bindings{{"a", 0.5}}, Bindings{{"z", 0}})), 1e-12);
}

TEST(Margin, Errors) {
    EXPECT_THROW(margin("NOPE", Bindings{}, Bindings{}), UsageError);
    try {
        margin("INQ1", Bindings{{"a", 1}, {"b", 1}}, Bindings{{"z", 0.5}});
        FAIL() << "expected DomainError";
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("z > a+b-1"), std::string::npos) << e.what();
    }
    EXPECT_THROW(margin("INQ1", Bindings{{"a", 1}}, Bindings{{"z", 3}}), UsageError);
    EXPECT_THROW(margin("INQ1", Bindings{{"a", 1}, {"b", 1}, {"q", 2}}, Bindings{{"z", 3}}), UsageError);
}

TEST(Margin, EvaluateOrientation) {
    const MarginValue lb = evaluate(reg(), "BETA_UB", {}, Bindings{{"a", 2}, {"b", 3}});
    EXPECT_NEAR(lb.lhs_log, log_beta(2, 3), 1e-15);
    EXPECT_NEAR(lb.rhs_log, std::log(5.0 / 6.0), 1e-15);
    EXPECT_NEAR(lb.margin, lb.rhs_log - lb.lhs_log, 1e-15);
    const MarginValue ge = evaluate(reg(), "INQ1", Bindings{{"a", 1}, {"b", 1}}, Bindings{{"z", 3}});
    EXPECT_NEAR(ge.margin, ge.lhs_log - ge.rhs_log, 1e-15);
}

TEST(Sweep, Examples) {
    const SweepResult sym = sweep("SYM_GE1", Bindings{{"a", 0.5}}, z_points({50, 0.6, 5, 1}));
    ASSERT_EQ(sym.records.size(), 4u);
    EXPECT_EQ(sym.skipped, 0u);
    for (const SweepRecord& r : sym.records) EXPECT_TRUE(r.holds);
    EXPECT_TRUE(std::is_sorted(sym.records.begin(), sym.records.end(),
                               [](const SweepRecord& x, const SweepRecord& y) { return x.point.at("z") < y.point.at("z"); }));

    const SweepResult skip = sweep("INQ1", Bindings{{"a", 1}, {"b", 1}}, z_points({0.5}));
    EXPECT_TRUE(skip.records.empty());
    EXPECT_EQ(skip.skipped, 1u);
    EXPECT_THROW(sweep("NOPE", Bindings{}, z_points({1})), UsageError);
}

TEST(Sweep, BetaRandomPoints) {
    std::mt19937_64 rng(99);
    std::vector<Bindings> grid;
    for (int i = 0; i < 100; ++i) {
        const double a = 10.0 * (1.0 - static_cast<double>(rng() >> 11) * 0x1.0p-53);
        const double b = 10.0 * (1.0 - static_cast<double>(rng() >> 11) * 0x1.0p-53);
        grid.push_back(Bindings{{"a", a}, {"b", b}});
    }
    const SweepResult r = sweep("BETA_UB", Bindings{}, grid);
    EXPECT_EQ(r.records.size(), 100u);
    for (const SweepRecord& rec : r.records) {
        EXPECT_TRUE(rec.holds) << rec.point.to_string();
        EXPECT_EQ(rec.holds, rec.margin >= -kHoldTolerance);
    }
}

TEST(Sweep, PoleEdgeNudge) {
    // INQ50's closed left edge sits on a pole; sweeps evaluate just inside it.
    ASSERT_TRUE(reg().contains("INQ50"));
    const InequalityCase& c = reg().get("INQ50");
    const Bindings params{{"a", 0.4}, {"b", 0.7}};
    ASSERT_TRUE(c.pole_edge);
    const auto edge = c.pole_edge(params);
    ASSERT_TRUE(edge.has_value());
    const SweepResult r = sweep("INQ50", params, {Bindings{{c.point_names[0], *edge}}});
    ASSERT_EQ(r.records.size(), 1u);
    EXPECT_TRUE(std::isfinite(r.records[0].margin));
}

TEST(Validity, EveryAssertedClaimOnTenThousandPoints) {
    for (const InequalityCase& c : reg().cases()) {
        if (c.role != Role::Claim) continue;
        const std::vector<CasePoint> pts = sample_domain(reg(), c.id, {}, 10000, 42);
        ASSERT_EQ(pts.size(), 10000u) << c.id;
        const SweepResult r = audit_points(reg(), c.id, pts);
        EXPECT_EQ(r.skipped, 0u) << c.id;
        double worst = INFINITY;
        std::string where;
        for (const SweepRecord& rec : r.records) {
            if (rec.margin < worst) {
                worst = rec.margin;
                where = rec.params.to_string() + " " + rec.point.to_string();
            }
        }
        EXPECT_GE(worst, -kHoldTolerance) << c.id << " at " << where;
    }
}

TEST(Validity, SamplingIsDeterministic) {
    const auto a = sample_domain(reg(), "H_OMEGA", {}, 50, 7);
    const auto b = sample_domain(reg(), "H_OMEGA", {}, 50, 7);
    const auto c = sample_domain(reg(), "H_OMEGA", {}, 50, 8);
    ASSERT_EQ(a.size(), b.size());
    bool differs = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].params, b[i].params);
        EXPECT_EQ(a[i].point, b[i].point);
        differs |= !(a[i].point == c[i].point);
    }
    EXPECT_TRUE(differs);
    const auto fixed = sample_domain(reg(), "INQ1", Bindings{{"a", 2}, {"b", 3}}, 20, 1);
    for (const CasePoint& p : fixed) {
        EXPECT_EQ(p.params.at("a"), 2.0);
        EXPECT_EQ(p.params.at("b"), 3.0);
        EXPECT_GT(p.point.at("z"), 4.0);
    }
    EXPECT_THROW(sample_domain(reg(), "INQ1", Bindings{{"a", -1}, {"b", 0}}, 5, 1), UsageError);
}

TEST(Boundaries, EqualityCases) {
    for (double a : {0.05, 0.3, 0.5, 0.9}) {
        EXPECT_LE(std::abs(margin("INQ3_UB", Bindings{{"a", a}}, Bindings{{"z", 0}})), 1e-12) << a;
        EXPECT_LE(std::abs(margin("INQ3_LB", Bindings{{"a", 0}}, Bindings{{"z", a}})), 1e-12);
    }
    for (double z : {-0.5, 0.3, 4.0, 1e3}) {
        EXPECT_EQ(margin("INQ1", Bindings{{"a", 0}, {"b", 0}}, Bindings{{"z", z}}), 0.0) << z;
    }
    EXPECT_LE(std::abs(margin("INQ1", Bindings{{"a", 0.3}, {"b", 0.7}}, Bindings{{"z", 1e6}})), 1e-5);
    EXPECT_LE(std::abs(margin("INQ1", Bindings{{"a", 1}, {"b", 1}}, Bindings{{"z", 1e6}})), 1e-5);
}

TEST(Symmetry, LogHAntisymmetric) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.01, 4.0);
    for (int i = 0; i < 500; ++i) {
        const double a = u(rng), b = u(rng);
        const double x = a + b + 30.0 * u(rng), y = a + b + 30.0 * u(rng);
        EXPECT_NEAR(log_h(a, b, x, y), -log_h(a, b, y, x), 1e-12);
    }
    EXPECT_THROW(log_h(0.0, 1.0, 2.0, 3.0), DomainError);
    EXPECT_THROW(log_h(1.0, 1.0, 1.5, 3.0), DomainError);
}

TEST(Symmetry, SwapParameters) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 6.0);
    for (int i = 0; i < 500; ++i) {
        const double a = u(rng), b = u(rng);
        const double z = a + b - 1.0 + 0.01 + 50.0 * u(rng) / 6.0;
        EXPECT_NEAR(margin("INQ1", Bindings{{"a", a}, {"b", b}}, Bindings{{"z", z}}),
                    margin("INQ1", Bindings{{"a", b}, {"b", a}}, Bindings{{"z", z}}), 1e-12);
        EXPECT_NEAR(margin("INQ51", Bindings{}, Bindings{{"a", a}, {"b", b}}),
                    margin("INQ51", Bindings{}, Bindings{{"a", b}, {"b", a}}), 1e-12);
    }
}

TEST(Monotonicity, BoundarySegments) {
    const double a = 0.3, b = 0.6, M = 40.0, s = a + b;
    const Bindings params{{"a", a}, {"b", b}};
    double prev_l1 = INFINITY, prev_l2 = -INFINITY;
    for (int i = 0; i < 50; ++i) {
        const double t = s + (M - s) * i / 49.0;
        const double l1 = margin("H_OMEGA", params, Bindings{{"x", t}, {"y", M}});
        const double l2 = margin("H_OMEGA", params, Bindings{{"x", s}, {"y", t}});
        EXPECT_LE(l1, prev_l1) << "x=" << t;
        EXPECT_GE(l2, prev_l2) << "y=" << t;
        prev_l1 = l1;
        prev_l2 = l2;
    }
}

TEST(Consistency, Inq58FromInq1) {
    for (double a : {0.0, 0.2, 1.0, 3.5}) {
        for (double z : {2.0 * a + 0.01, 2.0 * a + 1.0, 40.0}) {
            const MarginValue d = evaluate(reg(), "INQ58", Bindings{{"a", a}}, Bindings{{"z", z}});
            const MarginValue one = evaluate(reg(), "INQ1", Bindings{{"a", a}, {"b", a}}, Bindings{{"z", z - 1.0}});
            EXPECT_NEAR(d.lhs_log, one.lhs_log, 1e-12) << a << " " << z;
            EXPECT_NEAR(d.margin, one.margin - std::log1p(a * a / (z * (z - 2.0 * a))), 1e-12);
        }
    }
}

TEST(Tightness, BetaVersusDragomir) {
    const TightnessRanking r =
        tightness_compare(reg(), {"BETA_UB", "BETA_UB_DRAGOMIR"}, Bindings{{"a", 0.4}, {"b", 0.4}});
    EXPECT_EQ(r.claim, Claim::AtMost);
    ASSERT_EQ(r.bounds.size(), 2u);
    EXPECT_NEAR(r.bounds[0].rhs_value, 5.0, 1e-13);
    EXPECT_NEAR(r.bounds[1].rhs_value, 6.25, 1e-13);
    EXPECT_EQ(r.tightest, "BETA_UB");
}

TEST(Tightness, BetaTighterWheneverSumAtMostOne) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 2000; ++i) {
        const double a = 1.0 - static_cast<double>(rng() >> 11) * 0x1.0p-53;
        const double b = (1.0 - a) * (1.0 - static_cast<double>(rng() >> 11) * 0x1.0p-53);
        const TightnessRanking r =
            tightness_compare(reg(), {"BETA_UB", "BETA_UB_DRAGOMIR"}, Bindings{{"a", a}, {"b", b}});
        EXPECT_EQ(r.tightest, "BETA_UB") << a << " " << b;
    }
}

TEST(Tightness, Inq58Ranking) {
    const TightnessRanking r = tightness_compare(reg(), {"INQ58", "INQ58_BASELINES"}, Bindings{{"a", 1}, {"z", 4}});
    ASSERT_EQ(r.bounds.size(), 3u);
    EXPECT_EQ(r.bounds[0].id, "INQ58");
    EXPECT_NEAR(r.bounds[0].rhs_value, 1.125, 1e-14);
    EXPECT_NEAR(r.bounds[1].rhs_value, 1.25, 1e-14);
    EXPECT_NEAR(r.bounds[2].rhs_value, 1.5, 1e-14);
    EXPECT_EQ(r.ranking, (std::vector<std::string>{"INQ58_BASELINE_2", "INQ58_BASELINE_1", "INQ58"}));
    EXPECT_EQ(r.tightest, "INQ58_BASELINE_2");
}

TEST(Tightness, Errors) {
    EXPECT_THROW(tightness_compare(reg(), {"INQ3_UB", "SYM_SANDWICH_UB"}, Bindings{{"a", 0.5}, {"z", 2}}),
                 UsageError);
    EXPECT_THROW(tightness_compare(reg(), {"BETA_UB", "INQ1"}, Bindings{{"a", 0.5}, {"b", 0.5}}), UsageError);
    EXPECT_THROW(tightness_compare(reg(), {"BETA_UB", "BETA_UB_DRAGOMIR"}, Bindings{{"a", 2}, {"b", 0.5}}),
                 DomainError);
    EXPECT_EQ(comparable_ids(reg(), {"INQ58", "INQ58_BASELINES"}).size(), 3u);
}

TEST(SplitBindings, SeparatesParamsAndPoint) {
    const CasePoint p = split_bindings(reg().get("INQ1"), Bindings{{"z", 3}, {"a", 1}, {"b", 2}});
    EXPECT_EQ(p.params, (Bindings{{"a", 1}, {"b", 2}}));
    EXPECT_EQ(p.point, (Bindings{{"z", 3}}));
    EXPECT_THROW(split_bindings(reg().get("INQ1"), Bindings{{"w", 1}}), UsageError);
}
