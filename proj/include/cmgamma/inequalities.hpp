#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cmgamma::ineq {

inline constexpr double kHoldTolerance = 1e-9;

// Ordered name -> value bindings. List parameters are stored as a1, a2, ...
class Bindings {
public:
    Bindings() = default;
    Bindings(std::initializer_list<std::pair<std::string, double>> init);

    void set(const std::string& name, double value);
    void set_list(const std::string& name, const std::vector<double>& values);
    std::optional<double> find(std::string_view name) const;
    double at(std::string_view name) const;            // UsageError if missing
    std::vector<double> list(std::string_view name) const;  // name1, name2, ...
    bool has_list(std::string_view name) const;
    bool empty() const noexcept { return entries_.empty(); }
    std::size_t size() const noexcept { return entries_.size(); }
    const std::vector<std::pair<std::string, double>>& entries() const noexcept { return entries_; }
    std::vector<double> values() const;

    // "a=1;b=2" with 17 significant digits.
    std::string to_string() const;

    friend bool operator==(const Bindings&, const Bindings&) = default;

private:
    std::vector<std::pair<std::string, double>> entries_;
};

enum class Claim { AtLeast, AtMost };
enum class Role { Claim, Baseline };

struct Sides {
    double lhs_log;
    double rhs_log;
    // Oriented margin computed without forming lhs_log - rhs_log, for cases
    // where both sides are large and nearly equal.
    std::optional<double> margin{};
};

// Draws missing variables for a case; values present in `fixed` are used as given.
class Sampler {
public:
    Sampler(std::mt19937_64& rng, const Bindings& fixed);

    double uniform01();
    double uniform(double lo, double hi);
    double log_uniform(double lo, double hi);
    // lower + offset, offset drawn half uniform on (0, span], half log-uniform on [1e-6, span].
    double above(double lower, double span = 60.0);
    bool chance(double p);

    double param(const std::string& name, const std::function<double()>& draw);
    std::vector<double> list(const std::string& name, const std::function<std::vector<double>()>& draw);
    double point(const std::string& name, const std::function<double()>& draw);

    const Bindings& params() const noexcept { return params_; }
    const Bindings& point() const noexcept { return point_; }

private:
    std::mt19937_64& rng_;
    const Bindings& fixed_;
    Bindings params_;
    Bindings point_;
};

struct InequalityCase {
    std::string id;
    // Entries ending in "[]" are list parameters bound as name1, name2, ...
    std::vector<std::string> param_names;
    std::vector<std::string> point_names;
    Claim claim = Claim::AtLeast;
    Role role = Role::Claim;
    std::string lhs_key;    // identity of the left-hand expression
    std::string statement;  // human-readable form of the inequality
    // Returns the first violated constraint, or nullopt inside the domain. Total.
    std::function<std::optional<std::string>(const Bindings& params, const Bindings& point)> domain;
    std::function<Sides(const Bindings& params, const Bindings& point)> sides;
    std::function<void(Sampler&)> sample;
    // Open edge of the first point coordinate where Γ has a pole but the
    // inequality is written with ">="; sweeps move points sitting exactly on
    // it by +1e-9.
    std::function<std::optional<double>(const Bindings& params)> pole_edge;
};

struct CaseSummary {
    std::string id;
    std::vector<std::string> param_names;
    std::vector<std::string> point_names;
    Claim claim;
    Role role;
    std::string statement;
};

class Registry {
public:
    // The built-in registry of every gamma/beta inequality this library audits.
    static const Registry& standard();

    void add(InequalityCase c);
    void add_group(std::string name, std::vector<std::string> ids);

    bool contains(std::string_view id) const;
    const InequalityCase& get(std::string_view id) const;  // UsageError if unknown
    // A case id or a group name -> list of case ids.
    std::vector<std::string> resolve(std::string_view id_or_group) const;
    const std::vector<InequalityCase>& cases() const noexcept { return cases_; }

private:
    std::vector<InequalityCase> cases_;
    std::vector<std::pair<std::string, std::vector<std::string>>> groups_;
};

struct MarginValue {
    double lhs_log;
    double rhs_log;
    double margin;  // >= 0 means the claim holds
};

struct SweepRecord {
    std::string id;
    Bindings params;
    Bindings point;
    double lhs_log;
    double rhs_log;
    double margin;
    bool holds;
};

struct SweepResult {
    std::vector<SweepRecord> records;
    std::size_t skipped = 0;
};

struct CasePoint {
    Bindings params;
    Bindings point;
};

// ln h(x,y) = ln f(x) - ln f(y) with f(z) = Γ(z+1)Γ(z-a-b+1)/(Γ(z-a+1)Γ(z-b+1)),
// defined for a, b > 0 and x, y >= a+b. DomainError outside.
double log_h(double a, double b, double x, double y);

// ln f(z) for the two-parameter ratio above, symmetric in (a, b) bit for bit.
double log_two_param_ratio(double a, double b, double z);

std::vector<CaseSummary> registry_list(const Registry& reg = Registry::standard());

// Domain violation message, or nullopt. Never throws for well-formed names.
std::optional<std::string> domain_violation(const InequalityCase& c, const Bindings& params,
                                            const Bindings& point);

MarginValue evaluate(const Registry& reg, std::string_view id, const Bindings& params,
                     const Bindings& point);
double margin(const Registry& reg, std::string_view id, const Bindings& params,
              const Bindings& point);
double margin(std::string_view id, const Bindings& params, const Bindings& point);
// Positional form: values follow the case's declared scalar parameter and point names.
double margin(std::string_view id, const std::vector<double>& params,
              const std::vector<double>& point);

// Splits caller bindings into (params, point) for a case; names that belong
// to neither raise UsageError.
CasePoint split_bindings(const InequalityCase& c, const Bindings& mixed);

// Evaluates every point in the domain; points outside are counted as skipped.
// Records are sorted by point.
SweepResult sweep(const Registry& reg, std::string_view id, const Bindings& params,
                  const std::vector<Bindings>& grid, double hold_tol = kHoldTolerance);
SweepResult sweep(std::string_view id, const Bindings& params, const std::vector<Bindings>& grid);

// Evaluates (params, point) pairs in the given order; out-of-domain pairs are skipped.
SweepResult audit_points(const Registry& reg, std::string_view id,
                         const std::vector<CasePoint>& points, double hold_tol = kHoldTolerance);

// Draws `count` domain points with a deterministic generator. Variables given
// in `fixed` are held; UsageError if the domain cannot be hit.
std::vector<CasePoint> sample_domain(const Registry& reg, std::string_view id,
                                     const Bindings& fixed, std::size_t count, std::uint64_t seed);

struct BoundEntry {
    std::string id;
    double rhs_log;
    double rhs_value;
    double margin;
};

struct TightnessRanking {
    Claim claim;
    std::string lhs_key;
    double lhs_log;
    std::vector<BoundEntry> bounds;     // in request order
    std::vector<std::string> ranking;   // tightest first
    std::string tightest;
};

// Expands groups and checks that the ids bound one left-hand side from one
// side with the same variables; returns the expanded ids or raises UsageError.
std::vector<std::string> comparable_ids(const Registry& reg, const std::vector<std::string>& ids);

// Compares bounds on a common left-hand side at one point. All ids (groups
// are expanded) must share lhs_key, claim direction and variables, else
// UsageError; a point outside any id's domain raises DomainError.
TightnessRanking tightness_compare(const Registry& reg, const std::vector<std::string>& ids,
                                   const Bindings& mixed);

}  // namespace cmgamma::ineq
