#include "inequality_cases.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "cmgamma/cm_certify.hpp"
#include "cmgamma/errors.hpp"
#include "cmgamma/specfun.hpp"

namespace cmgamma::ineq {
namespace {

using Violation = std::optional<std::string>;
using B = const Bindings&;

double lg(double x) { return log_gamma(x); }
double ratio(double x, double y) { return log_gamma_ratio(x, y); }

Violation first_failed(std::initializer_list<std::pair<bool, const char*>> checks) {
    for (const auto& [ok, what] : checks) {
        if (!ok) return std::string(what);
    }
    return std::nullopt;
}

// ln(z^2 / (z^2 - a^2)) for z > a >= 0.
double log_sq_over_diff(double z, double a) {
    const double q = a / z;
    if (q < 0.5) return -std::log1p(-q * q);
    return 2.0 * std::log(z) - std::log(z - a) - std::log(z + a);
}

// ln[Γ(a+b+1) / (Γ(a+1)Γ(b+1))]
double log_binom_sum(double a, double b) { return lg(a + b + 1.0) - (lg(a + 1.0) + lg(b + 1.0)); }

// ln[Γ(z+a)Γ(z-a) / Γ(z)^2]
double log_sym_ratio(double a, double z) { return ratio(z + a, z) + ratio(z - a, z); }

// Nonnegative draw on [0, hi], hitting 0 exactly now and then.
double nonneg(Sampler& s, double hi) {
    if (s.chance(0.03)) return 0.0;
    return s.chance(0.5) ? s.uniform(0.0, hi) : s.log_uniform(1e-6, hi);
}

// Strictly positive draw on (0, hi].
double positive(Sampler& s, double hi) {
    return s.chance(0.5) ? hi * (1.0 - s.uniform01()) : s.log_uniform(1e-6, hi);
}

// Draw on [lower, lower + span] that sits on the closed edge now and then.
double at_or_above(Sampler& s, double lower, double span = 60.0) {
    return s.chance(0.03) ? lower : s.above(lower, span);
}

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

std::vector<std::string> ab() { return {"a", "b"}; }

InequalityCase two_sided_base(std::string id, Claim claim, std::string lhs_key, std::string statement) {
    InequalityCase c;
    c.id = std::move(id);
    c.claim = claim;
    c.lhs_key = std::move(lhs_key);
    c.statement = std::move(statement);
    return c;
}

// --- Ratio families ----------------------------------------------------------

void add_ratio_family_cases(Registry& reg) {
    const std::string two_param_key = "Γ(z+1)Γ(z-a-b+1)/(Γ(z-a+1)Γ(z-b+1))";

    InequalityCase inq1 = two_sided_base("INQ1", Claim::AtLeast, two_param_key,
                                         "Γ(z+1)Γ(z-a-b+1)/(Γ(z-a+1)Γ(z-b+1)) >= 1, a,b >= 0, z > a+b-1");
    inq1.param_names = ab();
    inq1.point_names = {"z"};
    inq1.domain = [](B p, B x) {
        const double a = p.at("a"), b = p.at("b"), z = x.at("z");
        return first_failed({{a >= 0.0, "a >= 0"}, {b >= 0.0, "b >= 0"}, {z > a + b - 1.0, "z > a+b-1"}});
    };
    inq1.sides = [](B p, B x) {
        return Sides{log_two_param_ratio(p.at("a"), p.at("b"), x.at("z")), 0.0};
    };
    inq1.sample = [](Sampler& s) {
        const double a = s.param("a", [&] { return nonneg(s, 10.0); });
        const double b = s.param("b", [&] { return nonneg(s, 10.0); });
        s.point("z", [&] { return s.above(a + b - 1.0); });
    };
    reg.add(inq1);

    InequalityCase inq50 = inq1;
    inq50.id = "INQ50";
    inq50.statement = "Γ(z+1)Γ(z-a-b+1)/(Γ(z-a+1)Γ(z-b+1)) >= 1, a,b >= 0, z >= a+b-1";
    inq50.domain = [](B p, B x) {
        const double a = p.at("a"), b = p.at("b"), z = x.at("z");
        return first_failed({{a >= 0.0, "a >= 0"}, {b >= 0.0, "b >= 0"}, {z >= a + b - 1.0, "z >= a+b-1"}});
    };
    inq50.sample = [](Sampler& s) {
        const double a = s.param("a", [&] { return nonneg(s, 10.0); });
        const double b = s.param("b", [&] { return nonneg(s, 10.0); });
        s.point("z", [&] { return at_or_above(s, a + b - 1.0); });
    };
    inq50.pole_edge = [](B p) -> std::optional<double> { return p.at("a") + p.at("b") - 1.0; };
    reg.add(inq50);

    InequalityCase multi = two_sided_base(
        "MULTI_GE1", Claim::AtLeast, "Γ(z+1)^(n-1)Γ(z-ā+1)/ΠΓ(z-a_i+1)",
        "Γ(z+1)^(n-1)Γ(z-ā+1)/ΠΓ(z-a_i+1) >= 1, a_i >= 0, ā = Σa_i, z > ā-1");
    multi.param_names = {"a[]"};
    multi.point_names = {"z"};
    multi.domain = [](B p, B x) -> Violation {
        const std::vector<double> a = p.list("a");
        if (std::any_of(a.begin(), a.end(), [](double v) { return !(v >= 0.0); })) return "a_i >= 0";
        return first_failed({{x.at("z") > sum(a) - 1.0, "z > ā-1"}});
    };
    multi.sides = [](B p, B x) {
        const std::vector<double> a = p.list("a");
        const double z = x.at("z");
        double lhs = -ratio(z + 1.0, z - sum(a) + 1.0);
        for (double v : a) lhs += ratio(z + 1.0, z - v + 1.0);
        return Sides{lhs, 0.0};
    };
    multi.sample = [](Sampler& s) {
        const std::vector<double> a = s.list("a", [&] {
            std::vector<double> v(1 + static_cast<std::size_t>(s.uniform01() * 5.0));
            for (double& e : v) e = nonneg(s, 5.0);
            return v;
        });
        s.point("z", [&] { return s.above(sum(a) - 1.0); });
    };
    reg.add(multi);

    InequalityCase major = two_sided_base(
        "MAJOR_GE1", Claim::AtLeast, "ΠΓ(z-a_i)/ΠΓ(z-b_i)",
        "ΠΓ(z-a_i)/ΠΓ(z-b_i) >= 1, z > max(a_i,b_i), b weakly submajorized by a, Σa = Σb");
    major.param_names = {"a[]", "b[]"};
    major.point_names = {"z"};
    major.domain = [](B p, B x) -> Violation {
        const std::vector<double> a = p.list("a");
        const std::vector<double> b = p.list("b");
        if (a.size() != b.size()) return "len(a) == len(b)";
        auto negative = [](double v) { return !(v >= 0.0); };
        if (std::any_of(a.begin(), a.end(), negative) || std::any_of(b.begin(), b.end(), negative)) {
            return "a_i, b_i >= 0";
        }
        if (find_submajorization_violation(a, b)) return "b weakly submajorized by a";
        const double sa = sum(a), sb = sum(b);
        if (std::abs(sa - sb) > 1e-12 * std::max({1.0, sa, sb})) return "Σa = Σb";
        const double m = std::max(*std::max_element(a.begin(), a.end()),
                                  *std::max_element(b.begin(), b.end()));
        return first_failed({{x.at("z") > m, "z > max(a_i,b_i)"}});
    };
    major.sides = [](B p, B x) {
        std::vector<double> a = p.list("a");
        std::vector<double> b = p.list("b");
        std::sort(a.begin(), a.end(), std::greater<>{});
        std::sort(b.begin(), b.end(), std::greater<>{});
        const double z = x.at("z");
        double lhs = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) lhs += ratio(z - a[i], z - b[i]);
        return Sides{lhs, 0.0};
    };
    major.sample = [](Sampler& s) {
        const std::vector<double> a = s.list("a", [&] {
            std::vector<double> v(1 + static_cast<std::size_t>(s.uniform01() * 4.0));
            for (double& e : v) e = s.uniform(0.0, 8.0);
            return v;
        });
        const std::vector<double> b = s.list("b", [&] {
            // A few T-transforms: b_i, b_j <- convex mix of the pair, total unchanged.
            std::vector<double> v = a;
            const int moves = v.size() < 2 ? 0 : 1 + static_cast<int>(s.uniform01() * 3.0);
            for (int k = 0; k < moves; ++k) {
                const std::size_t i = static_cast<std::size_t>(s.uniform01() * v.size());
                std::size_t j = static_cast<std::size_t>(s.uniform01() * (v.size() - 1));
                if (j >= i) ++j;
                const double lambda = s.uniform01();
                const double pair = v[i] + v[j];
                v[i] = std::max(0.0, lambda * v[i] + (1.0 - lambda) * v[j]);
                v[j] = std::max(0.0, pair - v[i]);
            }
            return v;
        });
        double m = 0.0;
        for (double v : a) m = std::max(m, v);
        for (double v : b) m = std::max(m, v);
        s.point("z", [&] { return s.above(m, 40.0); });
    };
    reg.add(major);

    InequalityCase mean_shift = two_sided_base(
        "MEAN2_SHIFT", Claim::AtLeast, "Γ(x+1)Γ(y+1)/Γ((x+y)/2+1)^2",
        "Γ(x+1)Γ(y+1)/Γ((x+y)/2+1)^2 >= 1, x,y >= 0");
    mean_shift.point_names = {"x", "y"};
    mean_shift.domain = [](B, B x) {
        return first_failed({{x.at("x") >= 0.0, "x >= 0"}, {x.at("y") >= 0.0, "y >= 0"}});
    };
    mean_shift.sides = [](B, B x) {
        const double u = x.at("x"), v = x.at("y"), m = 0.5 * (u + v);
        return Sides{ratio(u + 1.0, m + 1.0) + ratio(v + 1.0, m + 1.0), 0.0};
    };
    mean_shift.sample = [](Sampler& s) {
        const double u = s.point("x", [&] { return nonneg(s, 30.0); });
        s.point("y", [&] { return s.chance(0.05) ? u : nonneg(s, 30.0); });
    };
    reg.add(mean_shift);

    InequalityCase mean = two_sided_base("MEAN2", Claim::AtLeast, "Γ(x)Γ(y)/Γ((x+y)/2)^2",
                                         "Γ(x)Γ(y)/Γ((x+y)/2)^2 >= (x+y)^2/(4xy), x,y > 0");
    mean.point_names = {"x", "y"};
    mean.domain = [](B, B x) {
        return first_failed({{x.at("x") > 0.0, "x > 0"}, {x.at("y") > 0.0, "y > 0"}});
    };
    mean.sides = [](B, B x) {
        const double u = x.at("x"), v = x.at("y"), m = 0.5 * (u + v);
        return Sides{ratio(u, m) + ratio(v, m), 2.0 * std::log(m) - std::log(u) - std::log(v)};
    };
    mean.sample = [](Sampler& s) {
        const double u = s.point("x", [&] { return positive(s, 30.0); });
        s.point("y", [&] { return s.chance(0.05) ? u : positive(s, 30.0); });
    };
    reg.add(mean);
}

// --- Symmetric family and the a = 1/2 chain ---------------------------------

void add_symmetric_cases(Registry& reg) {
    const std::string sym_key = "Γ(z+a)Γ(z-a)/Γ(z)^2";
    const std::string shifted_key = "Γ(z+a+1)Γ(z-a+1)/Γ(z+1)^2";

    InequalityCase sym = two_sided_base("SYM_GE1", Claim::AtLeast, sym_key,
                                        "Γ(z+a)Γ(z-a)/Γ(z)^2 >= 1, a >= 0, z > a");
    sym.param_names = {"a"};
    sym.point_names = {"z"};
    sym.domain = [](B p, B x) {
        const double a = p.at("a");
        return first_failed({{a >= 0.0, "a >= 0"}, {x.at("z") > a, "z > a"}});
    };
    sym.sides = [](B p, B x) { return Sides{log_sym_ratio(p.at("a"), x.at("z")), 0.0}; };
    sym.sample = [](Sampler& s) {
        const double a = s.param("a", [&] { return nonneg(s, 10.0); });
        s.point("z", [&] { return s.above(a); });
    };
    reg.add(sym);

    InequalityCase inq2 = two_sided_base("INQ2", Claim::AtLeast, shifted_key,
                                         "Γ(z+a+1)Γ(z-a+1)/Γ(z+1)^2 >= 1, a >= 0, z > a-1");
    inq2.param_names = {"a"};
    inq2.point_names = {"z"};
    inq2.domain = [](B p, B x) {
        const double a = p.at("a");
        return first_failed({{a >= 0.0, "a >= 0"}, {x.at("z") > a - 1.0, "z > a-1"}});
    };
    inq2.sides = [](B p, B x) { return Sides{log_sym_ratio(p.at("a"), x.at("z") + 1.0), 0.0}; };
    inq2.sample = [](Sampler& s) {
        const double a = s.param("a", [&] { return nonneg(s, 10.0); });
        s.point("z", [&] { return s.above(a - 1.0); });
    };
    reg.add(inq2);

    auto inq3_domain = [](B p, B x) {
        const double a = p.at("a");
        return first_failed({{a >= 0.0, "a >= 0"}, {a < 1.0, "a < 1"}, {x.at("z") >= 0.0, "z >= 0"}});
    };
    auto inq3_sample = [](Sampler& s) {
        s.param("a", [&] { return s.chance(0.03) ? 0.0 : s.uniform01(); });
        s.point("z", [&] { return at_or_above(s, 0.0); });
    };
    auto inq3_lhs = [](B p, B x) { return log_sym_ratio(p.at("a"), x.at("z") + 1.0); };

    InequalityCase inq3_lb = two_sided_base("INQ3_LB", Claim::AtLeast, shifted_key,
                                            "Γ(z+a+1)Γ(z-a+1)/Γ(z+1)^2 >= 1, 0 <= a < 1, z >= 0");
    inq3_lb.param_names = {"a"};
    inq3_lb.point_names = {"z"};
    inq3_lb.domain = inq3_domain;
    inq3_lb.sides = [inq3_lhs](B p, B x) { return Sides{inq3_lhs(p, x), 0.0}; };
    inq3_lb.sample = inq3_sample;
    reg.add(inq3_lb);

    InequalityCase inq3_ub = inq3_lb;
    inq3_ub.id = "INQ3_UB";
    inq3_ub.claim = Claim::AtMost;
    inq3_ub.statement = "Γ(z+a+1)Γ(z-a+1)/Γ(z+1)^2 <= Γ(1-a)Γ(1+a), 0 <= a < 1, z >= 0";
    inq3_ub.sides = [inq3_lhs](B p, B x) {
        const double a = p.at("a");
        return Sides{inq3_lhs(p, x), a == 0.0 ? 0.0 : std::log(reflection_product(a))};
    };
    reg.add(inq3_ub);

    auto sandwich_domain = [](B p, B x) {
        const double a = p.at("a");
        return first_failed({{a > 0.0, "a > 0"}, {a < 1.0, "a < 1"}, {x.at("z") > a, "z > a"}});
    };
    auto sandwich_sample = [](Sampler& s) {
        const double a = s.param("a", [&] { return 1.0 - s.uniform01(); });
        s.point("z", [&] { return s.above(a); });
    };

    InequalityCase sym_lb = two_sided_base("SYM_SANDWICH_LB", Claim::AtLeast, sym_key,
                                           "Γ(z+a)Γ(z-a)/Γ(z)^2 >= z^2/(z^2-a^2), 0 < a < 1, z > a");
    sym_lb.param_names = {"a"};
    sym_lb.point_names = {"z"};
    sym_lb.domain = sandwich_domain;
    sym_lb.sides = [](B p, B x) {
        const double a = p.at("a"), z = x.at("z");
        return Sides{log_sym_ratio(a, z), log_sq_over_diff(z, a)};
    };
    sym_lb.sample = sandwich_sample;
    reg.add(sym_lb);

    InequalityCase sym_ub = sym_lb;
    sym_ub.id = "SYM_SANDWICH_UB";
    sym_ub.claim = Claim::AtMost;
    sym_ub.statement = "Γ(z+a)Γ(z-a)/Γ(z)^2 <= πaz^2/(sin(πa)(z^2-a^2)), 0 < a < 1, z > a";
    sym_ub.sides = [](B p, B x) {
        const double a = p.at("a"), z = x.at("z");
        return Sides{log_sym_ratio(a, z), std::log(reflection_product(a)) + log_sq_over_diff(z, a)};
    };
    reg.add(sym_ub);

    // a = 1/2
    InequalityCase half_lb = two_sided_base("HALF_SANDWICH_LB", Claim::AtLeast, "Γ(z+1/2)Γ(z-1/2)/Γ(z)^2",
                                            "Γ(z+1/2)Γ(z-1/2)/Γ(z)^2 >= 4z^2/(4z^2-1), z > 1/2");
    half_lb.point_names = {"z"};
    half_lb.domain = [](B, B x) { return first_failed({{x.at("z") > 0.5, "z > 1/2"}}); };
    half_lb.sides = [](B, B x) {
        const double z = x.at("z");
        return Sides{log_sym_ratio(0.5, z), log_sq_over_diff(z, 0.5)};
    };
    half_lb.sample = [](Sampler& s) { s.point("z", [&] { return s.above(0.5); }); };
    reg.add(half_lb);

    InequalityCase half_ub = half_lb;
    half_ub.id = "HALF_SANDWICH_UB";
    half_ub.claim = Claim::AtMost;
    half_ub.statement = "Γ(z+1/2)Γ(z-1/2)/Γ(z)^2 <= 2πz^2/(4z^2-1), z > 1/2";
    half_ub.sides = [](B, B x) {
        const double z = x.at("z");
        return Sides{log_sym_ratio(0.5, z), std::log(std::numbers::pi / 2.0) + log_sq_over_diff(z, 0.5)};
    };
    reg.add(half_ub);

    InequalityCase wallis_lb = two_sided_base("HALF_WALLIS_LB", Claim::AtLeast, "Γ(z+1/2)/Γ(z+1)",
                                              "Γ(z+1/2)/Γ(z+1) >= (2/(2z+1))^(1/2), z >= 0");
    wallis_lb.point_names = {"z"};
    wallis_lb.domain = [](B, B x) { return first_failed({{x.at("z") >= 0.0, "z >= 0"}}); };
    wallis_lb.sides = [](B, B x) {
        const double z = x.at("z");
        return Sides{ratio(z + 0.5, z + 1.0), 0.5 * (std::numbers::ln2 - std::log1p(2.0 * z))};
    };
    wallis_lb.sample = [](Sampler& s) { s.point("z", [&] { return at_or_above(s, 0.0); }); };
    reg.add(wallis_lb);

    InequalityCase wallis_ub = wallis_lb;
    wallis_ub.id = "HALF_WALLIS_UB";
    wallis_ub.claim = Claim::AtMost;
    wallis_ub.statement = "Γ(z+1/2)/Γ(z+1) <= (π/(2z+1))^(1/2), z >= 0";
    wallis_ub.sides = [](B, B x) {
        const double z = x.at("z");
        return Sides{ratio(z + 0.5, z + 1.0), 0.5 * (std::log(std::numbers::pi) - std::log1p(2.0 * z))};
    };
    reg.add(wallis_ub);

    InequalityCase hratio_lb = two_sided_base("HALF_RATIO_LB", Claim::AtLeast, "Γ(z+1/2)/Γ(z)",
                                              "Γ(z+1/2)/Γ(z) >= (2z^2/(2z+1))^(1/2), z > 0");
    hratio_lb.point_names = {"z"};
    hratio_lb.domain = [](B, B x) { return first_failed({{x.at("z") > 0.0, "z > 0"}}); };
    hratio_lb.sides = [](B, B x) {
        const double z = x.at("z");
        return Sides{ratio(z + 0.5, z),
                     0.5 * (std::numbers::ln2 - std::log1p(2.0 * z)) + std::log(z)};
    };
    hratio_lb.sample = [](Sampler& s) { s.point("z", [&] { return s.above(0.0); }); };
    reg.add(hratio_lb);

    InequalityCase hratio_ub = hratio_lb;
    hratio_ub.id = "HALF_RATIO_UB";
    hratio_ub.claim = Claim::AtMost;
    hratio_ub.statement = "Γ(z+1/2)/Γ(z) <= (πz^2/(2z+1))^(1/2), z > 0";
    hratio_ub.sides = [](B, B x) {
        const double z = x.at("z");
        return Sides{ratio(z + 0.5, z),
                     0.5 * (std::log(std::numbers::pi) - std::log1p(2.0 * z)) + std::log(z)};
    };
    reg.add(hratio_ub);
}

// --- h(x,y) and its companions ----------------------------------------------

void add_probability_cases(Registry& reg) {
    InequalityCase h = two_sided_base("H_OMEGA", Claim::AtLeast, "h(x,y)",
                                      "h(x,y) = f(x)/f(y) >= 1 on 0 < a <= b < a+b <= x <= y");
    h.param_names = ab();
    h.point_names = {"x", "y"};
    h.domain = [](B p, B x) {
        const double a = p.at("a"), b = p.at("b"), u = x.at("x"), v = x.at("y");
        return first_failed({{a > 0.0, "a > 0"}, {a <= b, "a <= b"}, {u >= a + b, "x >= a+b"}, {u <= v, "x <= y"}});
    };
    h.sides = [](B p, B x) { return Sides{log_h(p.at("a"), p.at("b"), x.at("x"), x.at("y")), 0.0}; };
    h.sample = [](Sampler& s) {
        const double a = s.param("a", [&] { return positive(s, 5.0); });
        const double b = s.param("b", [&] { return a + nonneg(s, 5.0); });
        const double u = s.point("x", [&] { return at_or_above(s, a + b, 40.0); });
        s.point("y", [&] { return s.chance(0.05) ? u : s.above(u, 60.0); });
    };
    reg.add(h);

    InequalityCase g = two_sided_base("G_LE1", Claim::AtMost, "Γ(z-a+1)Γ(z-b+1)/(Γ(z+1)Γ(z-a-b+1))",
                                      "Γ(z-a+1)Γ(z-b+1)/(Γ(z+1)Γ(z-a-b+1)) <= 1, z >= a+b > b >= a > 0");
    g.param_names = ab();
    g.point_names = {"z"};
    g.domain = [](B p, B x) {
        const double a = p.at("a"), b = p.at("b");
        return first_failed({{a > 0.0, "a > 0"}, {a <= b, "a <= b"}, {x.at("z") >= a + b, "z >= a+b"}});
    };
    g.sides = [](B p, B x) {
        return Sides{-log_two_param_ratio(p.at("a"), p.at("b"), x.at("z")), 0.0};
    };
    g.sample = [](Sampler& s) {
        const double a = s.param("a", [&] { return positive(s, 5.0); });
        const double b = s.param("b", [&] { return a + nonneg(s, 5.0); });
        s.point("z", [&] { return at_or_above(s, a + b); });
    };
    reg.add(g);

    InequalityCase psi = two_sided_base("PSI_XY", Claim::AtMost, "Γ(x+1)Γ(y-a+1)/(Γ(y+1)Γ(x-a+1))",
                                        "Γ(x+1)Γ(y-a+1)/(Γ(y+1)Γ(x-a+1)) <= 1, y > x > a > 0");
    psi.param_names = {"a"};
    psi.point_names = {"x", "y"};
    psi.domain = [](B p, B x) {
        const double a = p.at("a"), u = x.at("x"), v = x.at("y");
        return first_failed({{a > 0.0, "a > 0"}, {u > a, "x > a"}, {v > u, "y > x"}});
    };
    psi.sides = [](B p, B x) {
        const double a = p.at("a"), u = x.at("x"), v = x.at("y");
        return Sides{ratio(u + 1.0, u - a + 1.0) - ratio(v + 1.0, v - a + 1.0), 0.0};
    };
    psi.sample = [](Sampler& s) {
        const double a = s.param("a", [&] { return positive(s, 5.0); });
        const double u = s.point("x", [&] { return s.above(a); });
        s.point("y", [&] { return s.above(u); });
    };
    reg.add(psi);

    InequalityCase psi_ab = two_sided_base(
        "PSI_XY_AB", Claim::AtMost, "Γ(x+1)Γ(y-a-b+1)/(Γ(y+1)Γ(x-a-b+1))",
        "Γ(x+1)Γ(y-a-b+1)/(Γ(y+1)Γ(x-a-b+1)) <= 1, y > x > a+b > b >= a > 0");
    psi_ab.param_names = ab();
    psi_ab.point_names = {"x", "y"};
    psi_ab.domain = [](B p, B x) {
        const double a = p.at("a"), b = p.at("b"), u = x.at("x"), v = x.at("y");
        return first_failed({{a > 0.0, "a > 0"}, {a <= b, "a <= b"}, {u > a + b, "x > a+b"}, {v > u, "y > x"}});
    };
    psi_ab.sides = [](B p, B x) {
        const double s = p.at("a") + p.at("b"), u = x.at("x"), v = x.at("y");
        return Sides{ratio(u + 1.0, u - s + 1.0) - ratio(v + 1.0, v - s + 1.0), 0.0};
    };
    psi_ab.sample = [](Sampler& s) {
        const double a = s.param("a", [&] { return positive(s, 5.0); });
        const double b = s.param("b", [&] { return a + nonneg(s, 5.0); });
        const double u = s.point("x", [&] { return s.above(a + b); });
        s.point("y", [&] { return s.above(u); });
    };
    reg.add(psi_ab);
}

// --- Beta and duplication consequences --------------------------------------

void add_beta_cases(Registry& reg) {
    auto sample_ab = [](double hi) {
        return [hi](Sampler& s) {
            s.point("a", [&] { return positive(s, hi); });
            s.point("b", [&] { return positive(s, hi); });
        };
    };
    auto positive_ab = [](B, B x) {
        return first_failed({{x.at("a") > 0.0, "a > 0"}, {x.at("b") > 0.0, "b > 0"}});
    };

    InequalityCase inq51 = two_sided_base("INQ51", Claim::AtLeast, "Γ(a+b+1)/(Γ(a+1)Γ(b+1))",
                                          "Γ(a+b+1)/(Γ(a+1)Γ(b+1)) >= 1, a,b >= 0");
    inq51.point_names = ab();
    inq51.domain = [](B, B x) {
        return first_failed({{x.at("a") >= 0.0, "a >= 0"}, {x.at("b") >= 0.0, "b >= 0"}});
    };
    inq51.sides = [](B, B x) { return Sides{log_binom_sum(x.at("a"), x.at("b")), 0.0}; };
    inq51.sample = [](Sampler& s) {
        s.point("a", [&] { return nonneg(s, 20.0); });
        s.point("b", [&] { return nonneg(s, 20.0); });
    };
    reg.add(inq51);

    InequalityCase inq53 = two_sided_base("INQ53", Claim::AtLeast, "Γ(a+b)/(Γ(a)Γ(b))",
                                          "Γ(a+b)/(Γ(a)Γ(b)) >= ab/(a+b), a,b > 0");
    inq53.point_names = ab();
    inq53.domain = positive_ab;
    inq53.sides = [](B, B x) {
        const double a = x.at("a"), b = x.at("b");
        return Sides{-log_beta(a, b), std::log(a) + std::log(b) - std::log(a + b)};
    };
    inq53.sample = sample_ab(20.0);
    reg.add(inq53);

    InequalityCase beta = two_sided_base("BETA_UB", Claim::AtMost, "B(a,b)", "B(a,b) <= (a+b)/(ab), a,b > 0");
    beta.point_names = ab();
    beta.domain = positive_ab;
    beta.sides = [](B, B x) {
        const double a = x.at("a"), b = x.at("b");
        return Sides{log_beta(a, b), std::log(a + b) - std::log(a) - std::log(b)};
    };
    beta.sample = sample_ab(20.0);
    reg.add(beta);

    InequalityCase beta_b1 = two_sided_base("BETA_UB_B1", Claim::AtMost, "B(a,b+1)", "B(a,b+1) <= 1/a, a,b > 0");
    beta_b1.point_names = ab();
    beta_b1.domain = positive_ab;
    beta_b1.sides = [](B, B x) {
        const double a = x.at("a"), b = x.at("b");
        return Sides{log_beta(a, b + 1.0), -std::log(a)};
    };
    beta_b1.sample = sample_ab(20.0);
    reg.add(beta_b1);

    InequalityCase beta_a1 = two_sided_base("BETA_UB_A1", Claim::AtMost, "B(a+1,b)", "B(a+1,b) <= 1/b, a,b > 0");
    beta_a1.point_names = ab();
    beta_a1.domain = positive_ab;
    beta_a1.sides = [](B, B x) {
        const double a = x.at("a"), b = x.at("b");
        return Sides{log_beta(a + 1.0, b), -std::log(b)};
    };
    beta_a1.sample = sample_ab(20.0);
    reg.add(beta_a1);

    InequalityCase dragomir = two_sided_base("BETA_UB_DRAGOMIR", Claim::AtMost, "B(a,b)",
                                             "B(a,b) <= 1/(ab), 0 < a,b <= 1");
    dragomir.role = Role::Baseline;
    dragomir.point_names = ab();
    dragomir.domain = [](B, B x) {
        const double a = x.at("a"), b = x.at("b");
        return first_failed({{a > 0.0, "a > 0"}, {a <= 1.0, "a <= 1"}, {b > 0.0, "b > 0"}, {b <= 1.0, "b <= 1"}});
    };
    dragomir.sides = [](B, B x) {
        const double a = x.at("a"), b = x.at("b");
        return Sides{log_beta(a, b), -std::log(a) - std::log(b)};
    };
    dragomir.sample = sample_ab(1.0);
    reg.add(dragomir);

    InequalityCase inq54 = two_sided_base("INQ54", Claim::AtLeast, "Γ(2a+1)/Γ(a+1)^2",
                                          "Γ(2a+1)/Γ(a+1)^2 >= 1, a >= 0");
    inq54.point_names = {"a"};
    inq54.domain = [](B, B x) { return first_failed({{x.at("a") >= 0.0, "a >= 0"}}); };
    inq54.sides = [](B, B x) { return Sides{log_binom_sum(x.at("a"), x.at("a")), 0.0}; };
    inq54.sample = [](Sampler& s) { s.point("a", [&] { return nonneg(s, 30.0); }); };
    reg.add(inq54);

    InequalityCase inq55 = two_sided_base("INQ55", Claim::AtLeast, "Γ(2a)/Γ(a)^2",
                                          "Γ(2a)/Γ(a)^2 >= a/2, a > 0");
    inq55.point_names = {"a"};
    inq55.domain = [](B, B x) { return first_failed({{x.at("a") > 0.0, "a > 0"}}); };
    inq55.sides = [](B, B x) {
        const double a = x.at("a");
        return Sides{-log_beta(a, a), std::log(a) - std::numbers::ln2};
    };
    inq55.sample = [](Sampler& s) { s.point("a", [&] { return positive(s, 30.0); }); };
    reg.add(inq55);

    auto dup_domain = [](B, B x) {
        const double a = x.at("a");
        return first_failed({{a > 0.0, "a > 0"}, {a <= 1.0, "a <= 1"}});
    };
    InequalityCase dup_lb = two_sided_base("DUP_SANDWICH_LB", Claim::AtLeast, "Γ(a)^2/Γ(2a)",
                                           "Γ(a)^2/Γ(2a) >= (2a-a^2)/a^2, 0 < a <= 1");
    dup_lb.point_names = {"a"};
    dup_lb.domain = dup_domain;
    dup_lb.sides = [](B, B x) {
        const double a = x.at("a");
        return Sides{log_beta(a, a), std::log(2.0 - a) - std::log(a)};
    };
    dup_lb.sample = [](Sampler& s) { s.point("a", [&] { return positive(s, 1.0); }); };
    reg.add(dup_lb);

    InequalityCase dup_ub = dup_lb;
    dup_ub.id = "DUP_SANDWICH_UB";
    dup_ub.claim = Claim::AtMost;
    dup_ub.statement = "Γ(a)^2/Γ(2a) <= 2/a, 0 < a <= 1";
    dup_ub.sides = [](B, B x) {
        const double a = x.at("a");
        return Sides{log_beta(a, a), std::numbers::ln2 - std::log(a)};
    };
    reg.add(dup_ub);
}

// --- Consequences on 0 < z <= 1 and beyond ----------------------------------

void add_tail_cases(Registry& reg) {
    const std::string middle_key = "Γ(z-a-b+1)/(Γ(z-a+1)Γ(z-b+1))";
    auto middle = [](double a, double b, double z) {
        return lg(z - (a + b) + 1.0) - (lg(z - a + 1.0) + lg(z - b + 1.0));
    };

    InequalityCase inq56 = two_sided_base("INQ56", Claim::AtLeast, middle_key,
                                          "Γ(z-a-b+1)/(Γ(z-a+1)Γ(z-b+1)) >= 1/Γ(z+1), 0 < a <= b < a+b <= z <= 1");
    inq56.param_names = ab();
    inq56.point_names = {"z"};
    inq56.domain = [](B p, B x) {
        const double a = p.at("a"), b = p.at("b"), z = x.at("z");
        return first_failed({{a > 0.0, "a > 0"}, {a <= b, "a <= b"}, {z >= a + b, "z >= a+b"}, {z <= 1.0, "z <= 1"}});
    };
    inq56.sides = [middle](B p, B x) {
        const double a = p.at("a"), b = p.at("b"), z = x.at("z");
        return Sides{middle(a, b, z), -lg(z + 1.0), log_two_param_ratio(a, b, z)};
    };
    inq56.sample = [](Sampler& s) {
        const double a = s.param("a", [&] { return positive(s, 0.5); });
        const double b = s.param("b", [&] { return a + s.uniform01() * std::max(0.0, 1.0 - 2.0 * a); });
        s.point("z", [&] { return s.chance(0.03) ? 1.0 : s.uniform(a + b, 1.0); });
    };
    reg.add(inq56);

    InequalityCase recip = two_sided_base("INQ56_RECIP", Claim::AtLeast, "1/Γ(z+1)", "1/Γ(z+1) >= 1, 0 < z <= 1");
    recip.point_names = {"z"};
    recip.domain = [](B, B x) {
        const double z = x.at("z");
        return first_failed({{z > 0.0, "z > 0"}, {z <= 1.0, "z <= 1"}});
    };
    recip.sides = [](B, B x) { return Sides{-lg(x.at("z") + 1.0), 0.0}; };
    recip.sample = [](Sampler& s) { s.point("z", [&] { return s.chance(0.03) ? 1.0 : positive(s, 1.0); }); };
    reg.add(recip);

    auto inq57_domain = [](B p, B x) {
        const double a = p.at("a"), b = p.at("b");
        return first_failed({{a > 0.0, "a > 0"}, {a <= b, "a <= b"}, {x.at("z") >= a + b, "z >= a+b"}});
    };
    auto inq57_sample = [](Sampler& s) {
        const double a = s.param("a", [&] { return positive(s, 5.0); });
        const double b = s.param("b", [&] { return a + nonneg(s, 5.0); });
        s.point("z", [&] { return at_or_above(s, a + b); });
    };

    InequalityCase inq57_lb = two_sided_base("INQ57_LB", Claim::AtLeast, middle_key,
                                             "Γ(z-a-b+1)/(Γ(z-a+1)Γ(z-b+1)) >= 1/Γ(z+1), z >= a+b > b >= a > 0");
    inq57_lb.param_names = ab();
    inq57_lb.point_names = {"z"};
    inq57_lb.domain = inq57_domain;
    inq57_lb.sides = [middle](B p, B x) {
        const double a = p.at("a"), b = p.at("b"), z = x.at("z");
        return Sides{middle(a, b, z), -lg(z + 1.0), log_two_param_ratio(a, b, z)};
    };
    inq57_lb.sample = inq57_sample;
    reg.add(inq57_lb);

    InequalityCase inq57_ub = inq57_lb;
    inq57_ub.id = "INQ57_UB";
    inq57_ub.claim = Claim::AtMost;
    inq57_ub.statement =
        "Γ(z-a-b+1)/(Γ(z-a+1)Γ(z-b+1)) <= Γ(a+b+1)/(Γ(z+1)Γ(a+1)Γ(b+1)), z >= a+b > b >= a > 0";
    inq57_ub.sides = [middle](B p, B x) {
        const double a = p.at("a"), b = p.at("b"), z = x.at("z");
        const double cap = log_binom_sum(a, b);
        return Sides{middle(a, b, z), cap - lg(z + 1.0), cap - log_two_param_ratio(a, b, z)};
    };
    reg.add(inq57_ub);

    const std::string dup_key = "Γ(z)Γ(z-2a)/Γ(z-a)^2";
    auto dup_lhs = [](double a, double z) { return ratio(z, z - a) - ratio(z - a, z - 2.0 * a); };

    InequalityCase inq58 = two_sided_base("INQ58", Claim::AtLeast, dup_key,
                                          "Γ(z)Γ(z-2a)/Γ(z-a)^2 >= 1 + a^2/(z(z-2a)), a >= 0, z > 2a");
    inq58.param_names = {"a"};
    inq58.point_names = {"z"};
    inq58.domain = [](B p, B x) {
        const double a = p.at("a");
        return first_failed({{a >= 0.0, "a >= 0"}, {x.at("z") > 2.0 * a, "z > 2a"}});
    };
    inq58.sides = [dup_lhs](B p, B x) {
        const double a = p.at("a"), z = x.at("z");
        return Sides{dup_lhs(a, z), std::log1p(a * a / (z * (z - 2.0 * a)))};
    };
    inq58.sample = [](Sampler& s) {
        const double a = s.param("a", [&] { return nonneg(s, 10.0); });
        s.point("z", [&] { return s.above(2.0 * a); });
    };
    reg.add(inq58);

    InequalityCase base1 = inq58;
    base1.id = "INQ58_BASELINE_1";
    base1.role = Role::Baseline;
    base1.statement = "Γ(z)Γ(z-2a)/Γ(z-a)^2 >= (a^2+z)/z, a >= 0, z > 0, z > 2a";
    base1.domain = [](B p, B x) {
        const double a = p.at("a"), z = x.at("z");
        return first_failed({{a >= 0.0, "a >= 0"}, {z > 0.0, "z > 0"}, {z > 2.0 * a, "z > 2a"}});
    };
    base1.sides = [dup_lhs](B p, B x) {
        const double a = p.at("a"), z = x.at("z");
        return Sides{dup_lhs(a, z), std::log1p(a * a / z)};
    };
    reg.add(base1);

    InequalityCase base2 = inq58;
    base2.id = "INQ58_BASELINE_2";
    base2.role = Role::Baseline;
    base2.statement = "Γ(z)Γ(z-2a)/Γ(z-a)^2 >= 1 + a^2(z-2)/(z-a-1)^2, a > 0, z > 2, z > 2a";
    base2.domain = [](B p, B x) {
        const double a = p.at("a"), z = x.at("z");
        return first_failed({{a > 0.0, "a > 0"}, {z > 2.0, "z > 2"}, {z > 2.0 * a, "z > 2a"}});
    };
    base2.sides = [dup_lhs](B p, B x) {
        const double a = p.at("a"), z = x.at("z");
        const double d = z - a - 1.0;
        return Sides{dup_lhs(a, z), std::log1p(a * a * (z - 2.0) / (d * d))};
    };
    base2.sample = [](Sampler& s) {
        const double a = s.param("a", [&] { return positive(s, 10.0); });
        s.point("z", [&] { return s.above(std::max(2.0, 2.0 * a)); });
    };
    reg.add(base2);
}

}  // namespace

double log_two_param_ratio(double a, double b, double z) {
    const double s = a + b;
    // Average of the two pairings so that swapping a and b is exact.
    const double via_a = ratio(z + 1.0, z - a + 1.0) - ratio(z - b + 1.0, z - s + 1.0);
    const double via_b = ratio(z + 1.0, z - b + 1.0) - ratio(z - a + 1.0, z - s + 1.0);
    return 0.5 * (via_a + via_b);
}

double log_h(double a, double b, double x, double y) {
    if (!(a > 0.0) || !(b > 0.0) || !(x >= a + b) || !(y >= a + b)) {
        throw DomainError("log_h: need a, b > 0 and x, y >= a+b");
    }
    return log_two_param_ratio(a, b, x) - log_two_param_ratio(a, b, y);
}

namespace detail {

Registry build_standard_registry() {
    Registry reg;
    add_ratio_family_cases(reg);
    add_symmetric_cases(reg);
    add_probability_cases(reg);
    add_beta_cases(reg);
    add_tail_cases(reg);

    reg.add_group("INQ3", {"INQ3_LB", "INQ3_UB"});
    reg.add_group("SYM_SANDWICH", {"SYM_SANDWICH_LB", "SYM_SANDWICH_UB"});
    reg.add_group("HALF_SANDWICH", {"HALF_SANDWICH_LB", "HALF_SANDWICH_UB"});
    reg.add_group("HALF_WALLIS", {"HALF_WALLIS_LB", "HALF_WALLIS_UB"});
    reg.add_group("HALF_RATIO", {"HALF_RATIO_LB", "HALF_RATIO_UB"});
    reg.add_group("DUP_SANDWICH", {"DUP_SANDWICH_LB", "DUP_SANDWICH_UB"});
    reg.add_group("INQ57", {"INQ57_LB", "INQ57_UB"});
    reg.add_group("INQ58_BASELINES", {"INQ58_BASELINE_1", "INQ58_BASELINE_2"});
    return reg;
}

}  // namespace detail
}  // namespace cmgamma::ineq
