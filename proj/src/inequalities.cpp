#include "cmgamma/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "cmgamma/errors.hpp"
#include "inequality_cases.hpp"

namespace cmgamma::ineq {
namespace {

constexpr double kPoleNudge = 1e-9;
constexpr int kMaxSampleTries = 1000;

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

bool is_list_name(const std::string& name) {
    return name.size() > 2 && name.compare(name.size() - 2, 2, "[]") == 0;
}

std::string list_stem(const std::string& name) { return name.substr(0, name.size() - 2); }

// Entry name `entry` belongs to list `stem` when it is stem followed by digits.
bool is_list_entry(std::string_view entry, std::string_view stem) {
    if (entry.size() <= stem.size() || entry.substr(0, stem.size()) != stem) return false;
    return std::all_of(entry.begin() + stem.size(), entry.end(),
                       [](char ch) { return ch >= '0' && ch <= '9'; });
}

bool declared(const std::vector<std::string>& names, std::string_view entry) {
    for (const std::string& name : names) {
        if (is_list_name(name) ? is_list_entry(entry, list_stem(name)) : entry == name) return true;
    }
    return false;
}

std::optional<std::string> missing_name(const std::vector<std::string>& names, const Bindings& b) {
    for (const std::string& name : names) {
        if (is_list_name(name)) {
            if (!b.has_list(list_stem(name))) return name;
        } else if (!b.find(name)) {
            return name;
        }
    }
    return std::nullopt;
}

std::optional<std::string> undeclared_name(const std::vector<std::string>& names,
                                           const Bindings& b) {
    for (const auto& [entry, value] : b.entries()) {
        if (!declared(names, entry)) return entry;
    }
    return std::nullopt;
}

void require_names(const InequalityCase& c, const Bindings& params, const Bindings& point) {
    auto fail = [&](const std::string& what) {
        throw UsageError(c.id + ": " + what);
    };
    if (auto m = missing_name(c.param_names, params)) fail("missing parameter " + *m);
    if (auto m = missing_name(c.point_names, point)) fail("missing point coordinate " + *m);
    if (auto u = undeclared_name(c.param_names, params)) fail("unknown parameter " + *u);
    if (auto u = undeclared_name(c.point_names, point)) fail("unknown point coordinate " + *u);
}

Bindings nudged_point(const InequalityCase& c, const Bindings& params, const Bindings& point) {
    if (!c.pole_edge || c.point_names.empty()) return point;
    const std::optional<double> edge = c.pole_edge(params);
    const std::string& first = c.point_names.front();
    if (!edge || point.at(first) != *edge) return point;
    Bindings moved = point;
    moved.set(first, *edge + kPoleNudge);
    return moved;
}

bool point_less(const SweepRecord& lhs, const SweepRecord& rhs) {
    return lhs.point.values() < rhs.point.values();
}

SweepRecord make_record(const InequalityCase& c, const Bindings& params, const Bindings& point,
                        const MarginValue& m, double hold_tol) {
    return {c.id, params, point, m.lhs_log, m.rhs_log, m.margin, m.margin >= -hold_tol};
}

}  // namespace

// --- Bindings -------------------------------------------------------------

Bindings::Bindings(std::initializer_list<std::pair<std::string, double>> init) {
    for (const auto& [name, value] : init) set(name, value);
}

void Bindings::set(const std::string& name, double value) {
    for (auto& entry : entries_) {
        if (entry.first == name) {
            entry.second = value;
            return;
        }
    }
    entries_.emplace_back(name, value);
}

void Bindings::set_list(const std::string& name, const std::vector<double>& values) {
    std::erase_if(entries_, [&](const auto& e) { return is_list_entry(e.first, name); });
    for (std::size_t i = 0; i < values.size(); ++i) set(name + std::to_string(i + 1), values[i]);
}

std::optional<double> Bindings::find(std::string_view name) const {
    for (const auto& [key, value] : entries_) {
        if (key == name) return value;
    }
    return std::nullopt;
}

double Bindings::at(std::string_view name) const {
    if (auto v = find(name)) return *v;
    throw UsageError("missing variable " + std::string(name));
}

std::vector<double> Bindings::list(std::string_view name) const {
    std::vector<double> out;
    for (std::size_t i = 1;; ++i) {
        auto v = find(std::string(name) + std::to_string(i));
        if (!v) break;
        out.push_back(*v);
    }
    return out;
}

bool Bindings::has_list(std::string_view name) const {
    return find(std::string(name) + "1").has_value();
}

std::vector<double> Bindings::values() const {
    std::vector<double> out;
    out.reserve(entries_.size());
    for (const auto& entry : entries_) out.push_back(entry.second);
    return out;
}

std::string Bindings::to_string() const {
    std::string out;
    for (const auto& [name, value] : entries_) {
        if (!out.empty()) out += ';';
        out += name + '=' + format_number(value);
    }
    return out;
}

// --- Sampler --------------------------------------------------------------

Sampler::Sampler(std::mt19937_64& rng, const Bindings& fixed) : rng_(rng), fixed_(fixed) {}

double Sampler::uniform01() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

double Sampler::uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

double Sampler::log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
}

double Sampler::above(double lower, double span) {
    const double offset = chance(0.5) ? span * (1.0 - uniform01()) : log_uniform(1e-6, span);
    return lower + offset;
}

bool Sampler::chance(double p) { return uniform01() < p; }

double Sampler::param(const std::string& name, const std::function<double()>& draw) {
    const double v = fixed_.find(name) ? *fixed_.find(name) : draw();
    params_.set(name, v);
    return v;
}

std::vector<double> Sampler::list(const std::string& name,
                                  const std::function<std::vector<double>()>& draw) {
    std::vector<double> v = fixed_.has_list(name) ? fixed_.list(name) : draw();
    params_.set_list(name, v);
    return v;
}

double Sampler::point(const std::string& name, const std::function<double()>& draw) {
    const double v = fixed_.find(name) ? *fixed_.find(name) : draw();
    point_.set(name, v);
    return v;
}

// --- Registry -------------------------------------------------------------

const Registry& Registry::standard() {
    static const Registry registry = detail::build_standard_registry();
    return registry;
}

void Registry::add(InequalityCase c) {
    if (contains(c.id)) throw UsageError("duplicate inequality id " + c.id);
    cases_.push_back(std::move(c));
}

void Registry::add_group(std::string name, std::vector<std::string> ids) {
    for (const std::string& id : ids) (void)get(id);
    groups_.emplace_back(std::move(name), std::move(ids));
}

bool Registry::contains(std::string_view id) const {
    return std::any_of(cases_.begin(), cases_.end(),
                       [&](const InequalityCase& c) { return c.id == id; });
}

const InequalityCase& Registry::get(std::string_view id) const {
    for (const InequalityCase& c : cases_) {
        if (c.id == id) return c;
    }
    throw UsageError("unknown inequality id " + std::string(id));
}

std::vector<std::string> Registry::resolve(std::string_view id_or_group) const {
    if (contains(id_or_group)) return {std::string(id_or_group)};
    for (const auto& [name, ids] : groups_) {
        if (name == id_or_group) return ids;
    }
    throw UsageError("unknown inequality id or group " + std::string(id_or_group));
}

// --- Evaluation -----------------------------------------------------------

std::vector<CaseSummary> registry_list(const Registry& reg) {
    std::vector<CaseSummary> out;
    out.reserve(reg.cases().size());
    for (const InequalityCase& c : reg.cases()) {
        out.push_back({c.id, c.param_names, c.point_names, c.claim, c.role, c.statement});
    }
    return out;
}

std::optional<std::string> domain_violation(const InequalityCase& c, const Bindings& params,
                                            const Bindings& point) {
    if (auto m = missing_name(c.param_names, params)) return "missing parameter " + *m;
    if (auto m = missing_name(c.point_names, point)) return "missing point coordinate " + *m;
    for (const Bindings* b : {&params, &point}) {
        for (const auto& [name, value] : b->entries()) {
            if (!std::isfinite(value)) return name + " must be finite";
        }
    }
    return c.domain(params, point);
}

MarginValue evaluate(const Registry& reg, std::string_view id, const Bindings& params,
                     const Bindings& point) {
    const InequalityCase& c = reg.get(id);
    require_names(c, params, point);
    const Bindings at = nudged_point(c, params, point);
    if (auto v = domain_violation(c, params, at)) {
        throw DomainError(c.id + ": constraint " + *v + " violated at " + params.to_string() +
                          (params.empty() ? "" : ";") + at.to_string());
    }
    const Sides s = c.sides(params, at);
    const double m = s.margin ? *s.margin
                              : (c.claim == Claim::AtLeast ? s.lhs_log - s.rhs_log
                                                           : s.rhs_log - s.lhs_log);
    return {s.lhs_log, s.rhs_log, m};
}

double margin(const Registry& reg, std::string_view id, const Bindings& params,
              const Bindings& point) {
    return evaluate(reg, id, params, point).margin;
}

double margin(std::string_view id, const Bindings& params, const Bindings& point) {
    return margin(Registry::standard(), id, params, point);
}

double margin(std::string_view id, const std::vector<double>& params,
              const std::vector<double>& point) {
    const InequalityCase& c = Registry::standard().get(id);
    if (std::any_of(c.param_names.begin(), c.param_names.end(), is_list_name)) {
        throw UsageError(c.id + ": list parameters need named bindings");
    }
    if (params.size() != c.param_names.size() || point.size() != c.point_names.size()) {
        throw UsageError(c.id + ": expected " + std::to_string(c.param_names.size()) +
                         " parameters and " + std::to_string(c.point_names.size()) +
                         " point coordinates");
    }
    Bindings p;
    Bindings x;
    for (std::size_t i = 0; i < params.size(); ++i) p.set(c.param_names[i], params[i]);
    for (std::size_t i = 0; i < point.size(); ++i) x.set(c.point_names[i], point[i]);
    return margin(Registry::standard(), id, p, x);
}

CasePoint split_bindings(const InequalityCase& c, const Bindings& mixed) {
    CasePoint out;
    for (const auto& [name, value] : mixed.entries()) {
        if (declared(c.point_names, name)) {
            out.point.set(name, value);
        } else if (declared(c.param_names, name)) {
            out.params.set(name, value);
        } else {
            throw UsageError(c.id + ": unknown variable " + name);
        }
    }
    return out;
}

SweepResult audit_points(const Registry& reg, std::string_view id,
                         const std::vector<CasePoint>& points, double hold_tol) {
    const InequalityCase& c = reg.get(id);
    SweepResult result;
    for (const CasePoint& cp : points) {
        require_names(c, cp.params, cp.point);
        const Bindings at = nudged_point(c, cp.params, cp.point);
        if (domain_violation(c, cp.params, at)) {
            ++result.skipped;
            continue;
        }
        result.records.push_back(make_record(c, cp.params, at, evaluate(reg, id, cp.params, at),
                                             hold_tol));
    }
    return result;
}

SweepResult sweep(const Registry& reg, std::string_view id, const Bindings& params,
                  const std::vector<Bindings>& grid, double hold_tol) {
    std::vector<CasePoint> points;
    points.reserve(grid.size());
    for (const Bindings& point : grid) points.push_back({params, point});
    SweepResult result = audit_points(reg, id, points, hold_tol);
    std::stable_sort(result.records.begin(), result.records.end(), point_less);
    return result;
}

SweepResult sweep(std::string_view id, const Bindings& params, const std::vector<Bindings>& grid) {
    return sweep(Registry::standard(), id, params, grid);
}

std::vector<CasePoint> sample_domain(const Registry& reg, std::string_view id,
                                     const Bindings& fixed, std::size_t count, std::uint64_t seed) {
    const InequalityCase& c = reg.get(id);
    for (const auto& [name, value] : fixed.entries()) {
        if (!declared(c.param_names, name) && !declared(c.point_names, name)) {
            throw UsageError(c.id + ": unknown variable " + name);
        }
    }
    std::mt19937_64 rng(seed);
    std::vector<CasePoint> out;
    out.reserve(count);
    while (out.size() < count) {
        bool hit = false;
        for (int attempt = 0; attempt < kMaxSampleTries && !hit; ++attempt) {
            Sampler s(rng, fixed);
            c.sample(s);
            if (!domain_violation(c, s.params(), s.point())) {
                out.push_back({s.params(), s.point()});
                hit = true;
            }
        }
        if (!hit) {
            throw UsageError(c.id + ": no domain point found for fixed values " + fixed.to_string());
        }
    }
    return out;
}

// --- Tightness ------------------------------------------------------------

std::vector<std::string> comparable_ids(const Registry& reg, const std::vector<std::string>& ids) {
    std::vector<std::string> expanded;
    for (const std::string& id : ids) {
        for (std::string& one : reg.resolve(id)) expanded.push_back(std::move(one));
    }
    if (expanded.size() < 2) throw UsageError("tightness_compare: need at least two bounds");

    const InequalityCase& first = reg.get(expanded.front());
    for (const std::string& id : expanded) {
        const InequalityCase& c = reg.get(id);
        if (c.lhs_key != first.lhs_key) {
            throw UsageError("tightness_compare: " + c.id + " bounds " + c.lhs_key + " but " +
                             first.id + " bounds " + first.lhs_key);
        }
        if (c.claim != first.claim) {
            throw UsageError("tightness_compare: " + c.id + " and " + first.id +
                             " bound from opposite sides");
        }
        if (c.param_names != first.param_names || c.point_names != first.point_names) {
            throw UsageError("tightness_compare: " + c.id + " and " + first.id +
                             " use different variables");
        }
    }
    return expanded;
}

TightnessRanking tightness_compare(const Registry& reg, const std::vector<std::string>& ids,
                                   const Bindings& mixed) {
    const std::vector<std::string> expanded = comparable_ids(reg, ids);
    const InequalityCase& first = reg.get(expanded.front());
    TightnessRanking out{first.claim, first.lhs_key, 0.0, {}, {}, {}};
    for (const std::string& id : expanded) {
        const CasePoint cp = split_bindings(reg.get(id), mixed);
        const MarginValue m = evaluate(reg, id, cp.params, cp.point);
        out.lhs_log = m.lhs_log;
        out.bounds.push_back({id, m.rhs_log, std::exp(m.rhs_log), m.margin});
    }
    std::vector<BoundEntry> ranked = out.bounds;
    // Lower bounds: largest first. Upper bounds: smallest first.
    std::stable_sort(ranked.begin(), ranked.end(), [&](const BoundEntry& l, const BoundEntry& r) {
        return out.claim == Claim::AtLeast ? l.rhs_log > r.rhs_log : l.rhs_log < r.rhs_log;
    });
    for (const BoundEntry& e : ranked) out.ranking.push_back(e.id);
    out.tightest = out.ranking.front();
    return out;
}

}  // namespace cmgamma::ineq
