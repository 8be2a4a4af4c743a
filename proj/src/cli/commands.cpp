#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "cmgamma/cli.hpp"
#include "cmgamma/errors.hpp"
#include "json.hpp"

namespace cmgamma::cli {
namespace {

using nlohmann::ordered_json;

const std::vector<std::pair<std::string, std::vector<std::string>>>& bound_groups() {
    static const std::vector<std::pair<std::string, std::vector<std::string>>> groups = {
        {"wallis", {"HALF_WALLIS_LB", "HALF_WALLIS_UB"}},
        {"half-ratio", {"HALF_RATIO_LB", "HALF_RATIO_UB"}},
        {"half-sandwich", {"HALF_SANDWICH_LB", "HALF_SANDWICH_UB"}},
        {"symmetric", {"SYM_GE1", "SYM_SANDWICH_LB", "SYM_SANDWICH_UB"}},
        {"inq3", {"INQ3_LB", "INQ3_UB"}},
        {"beta", {"BETA_UB", "BETA_UB_DRAGOMIR", "BETA_UB_B1", "BETA_UB_A1"}},
        {"dup", {"DUP_SANDWICH_LB", "DUP_SANDWICH_UB"}},
        {"inq57", {"INQ57_LB", "INQ57_UB"}},
        {"inq58", {"INQ58", "INQ58_BASELINE_1", "INQ58_BASELINE_2"}},
    };
    return groups;
}

void emit(const RunConfig& cfg, std::ostream& out, const std::function<void(std::ostream&)>& write) {
    if (cfg.out_path.empty()) {
        write(out);
        return;
    }
    std::ofstream file(cfg.out_path, std::ios::binary | std::ios::trunc);
    if (!file) throw UsageError("cannot open output file " + cfg.out_path);
    write(file);
    if (!file) throw UsageError("failed writing output file " + cfg.out_path);
}

// Cartesian product over the point coordinates not fixed by the caller.
std::vector<ineq::Bindings> build_points(const ineq::InequalityCase& c, const ineq::Bindings& fixed,
                                         const std::vector<GridSpec>& grids) {
    std::vector<std::string> free;
    for (const std::string& name : c.point_names) {
        if (!fixed.find(name)) free.push_back(name);
    }
    if (!free.empty() && grids.empty()) {
        throw UsageError(c.id + ": need --grid (or --samples) for coordinate " + free.front());
    }
    std::vector<std::vector<double>> axes;
    for (std::size_t i = 0; i < free.size(); ++i) {
        axes.push_back(grid_values(grids[std::min(i, grids.size() - 1)]));
    }

    std::vector<ineq::Bindings> points;
    std::vector<std::size_t> index(free.size(), 0);
    while (true) {
        ineq::Bindings p;
        std::size_t k = 0;
        for (const std::string& name : c.point_names) {
            if (auto v = fixed.find(name)) {
                p.set(name, *v);
            } else {
                p.set(name, axes[k][index[k]]);
                ++k;
            }
        }
        points.push_back(std::move(p));
        std::size_t d = free.size();
        while (d > 0) {
            --d;
            if (++index[d] < axes[d].size()) break;
            index[d] = 0;
            if (d == 0) return points;
        }
        if (free.empty()) return points;
    }
}

std::string describe_worst(const std::vector<ineq::SweepRecord>& records) {
    if (records.empty()) return "no points evaluated";
    const auto worst = std::min_element(records.begin(), records.end(),
                                        [](const auto& l, const auto& r) { return l.margin < r.margin; });
    return "min margin " + format_double(worst->margin) + " at " + worst->point.to_string();
}

}  // namespace

std::vector<std::string> bound_group(const std::string& name) {
    for (const auto& [key, ids] : bound_groups()) {
        if (key == name) return ids;
    }
    std::string known;
    for (const std::string& n : bound_group_names()) known += (known.empty() ? "" : ", ") + n;
    throw UsageError("unknown bound group '" + name + "' (" + known + ")");
}

std::vector<std::string> bound_group_names() {
    std::vector<std::string> names;
    for (const auto& group : bound_groups()) names.push_back(group.first);
    return names;
}

int cmd_audit(const RunConfig& cfg, const ineq::Registry& reg, std::ostream& out, std::ostream& err) {
    if (cfg.ids.empty()) throw UsageError("audit needs at least one --id");
    const double hold_tol = cfg.tol.value_or(ineq::kHoldTolerance);

    std::vector<std::string> case_ids;
    for (const std::string& id : cfg.ids) {
        for (const std::string& one : reg.resolve(id)) case_ids.push_back(one);
    }

    std::vector<ineq::SweepRecord> records;
    std::size_t skipped = 0;
    for (const std::string& id : case_ids) {
        const ineq::InequalityCase& c = reg.get(id);
        const ineq::CasePoint fixed = ineq::split_bindings(c, cfg.params);
        ineq::SweepResult r;
        if (cfg.samples) {
            r = ineq::audit_points(reg, id, ineq::sample_domain(reg, id, cfg.params, *cfg.samples, cfg.seed),
                                   hold_tol);
        } else {
            const std::vector<ineq::Bindings> grid = build_points(c, fixed.point, cfg.grids);
            r = ineq::sweep(reg, id, fixed.params, grid, hold_tol);
            if (c.role == ineq::Role::Baseline && r.skipped > 0) {
                for (const ineq::Bindings& p : grid) {
                    if (auto v = ineq::domain_violation(c, fixed.params, p)) {
                        throw UsageError(c.id + " is a comparison baseline and is only asserted on its "
                                         "stated domain; constraint " + *v + " fails at " +
                                         fixed.params.to_string() + (fixed.params.empty() ? "" : ";") +
                                         p.to_string());
                    }
                }
            }
        }
        const std::size_t failing = static_cast<std::size_t>(
            std::count_if(r.records.begin(), r.records.end(), [](const auto& rec) { return !rec.holds; }));
        err << id << ": " << r.records.size() << " points, " << r.skipped << " skipped, "
            << describe_worst(r.records) << ", " << failing << " violations\n";
        skipped += r.skipped;
        records.insert(records.end(), r.records.begin(), r.records.end());
    }

    emit(cfg, out, [&](std::ostream& os) {
        if (cfg.format == Format::Json) {
            write_sweep_json(os, records, skipped);
        } else {
            write_sweep_csv(os, records);
        }
    });
    const bool all_hold = std::all_of(records.begin(), records.end(), [](const auto& rec) { return rec.holds; });
    return all_hold ? 0 : 2;
}

int cmd_certify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.family.empty()) throw UsageError("certify needs --family");
    const RatioFamily fam = parse_family(cfg.family, cfg.params);
    require_majorization(fam);

    CertConfig cc;
    if (cfg.grids.empty()) {
        const double lower = fam.lower_bound();
        cc.z_grid = grid_values({lower + 0.05, lower + 20.0, 30, true});
        if (!(lower + 0.05 > 0.0)) cc.z_grid = grid_values({lower + 0.05, lower + 20.0, 30, false});
    } else {
        cc.z_grid = grid_values(cfg.grids.front());
    }
    cc.n_max = cfg.n_max;
    cc.tol = cfg.tol.value_or(cc.tol);
    cc.fd_step = cfg.fd_step;

    const CertReport log_cm = certify_log_cm(fam, cc);
    const CertReport fd = certify_cm_finite_diff(fam, cc);

    int code = 0;
    if (log_cm.verdict == Verdict::Violated) {
        code = 2;
    } else if (log_cm.verdict == Verdict::Inconclusive || fd.verdict != Verdict::Certified) {
        code = 3;
    }
    err << fam.describe() << ": log-derivative " << to_string(log_cm.verdict) << ", finite-difference (h="
        << format_double(cc.fd_step) << ") " << to_string(fd.verdict) << '\n';
    for (const std::string& d : log_cm.diagnostics) err << "  " << d << '\n';
    emit(cfg, out, [&](std::ostream& os) { write_cert_json(os, log_cm, {fd}, code); });
    return code;
}

int cmd_bounds(const RunConfig& cfg, const ineq::Registry& reg, std::ostream& out, std::ostream& err) {
    struct Row {
        std::string quantity;
        std::string role;
        std::string source;
        double value;
    };
    std::vector<Row> rows;
    std::vector<std::string> seen;
    for (const std::string& id : bound_group(cfg.bounds)) {
        const ineq::InequalityCase& c = reg.get(id);
        const ineq::CasePoint cp = ineq::split_bindings(c, cfg.params);
        ineq::MarginValue m{};
        try {
            m = ineq::evaluate(reg, id, cp.params, cp.point);
        } catch (const DomainError& e) {
            if (c.role != ineq::Role::Baseline) throw;
            err << "note: baseline " << id << " skipped outside its domain (" << e.what() << ")\n";
            continue;
        }
        if (std::find(seen.begin(), seen.end(), c.lhs_key) == seen.end()) {
            seen.push_back(c.lhs_key);
            rows.push_back({c.lhs_key, "exact", "gamma", std::exp(m.lhs_log)});
        }
        rows.push_back({c.lhs_key, c.claim == ineq::Claim::AtLeast ? "lower" : "upper", id,
                        std::exp(m.rhs_log)});
    }

    emit(cfg, out, [&](std::ostream& os) {
        if (cfg.format == Format::Json) {
            ordered_json doc = ordered_json::array();
            for (const Row& r : rows) {
                doc.push_back({{"quantity", r.quantity}, {"role", r.role}, {"source", r.source}, {"value", r.value}});
            }
            os << doc.dump(2) << '\n';
        } else {
            os << "quantity,role,source,value\n";
            for (const Row& r : rows) {
                os << '"' << r.quantity << "\"," << r.role << ',' << r.source << ',' << format_double(r.value)
                   << '\n';
            }
        }
    });
    return 0;
}

int cmd_compare(const RunConfig& cfg, const ineq::Registry& reg, std::ostream& out, std::ostream& err) {
    const std::vector<std::string> ids = ineq::comparable_ids(reg, cfg.ids);
    const ineq::InequalityCase& first = reg.get(ids.front());
    const ineq::CasePoint fixed = ineq::split_bindings(first, cfg.params);
    const std::vector<ineq::Bindings> points = build_points(first, fixed.point, cfg.grids);

    struct Row {
        ineq::Bindings point;
        ineq::TightnessRanking ranking;
    };
    std::vector<Row> rows;
    std::size_t skipped = 0;
    std::map<std::string, std::size_t> wins;
    for (const ineq::Bindings& p : points) {
        ineq::Bindings mixed = fixed.params;
        for (const auto& [name, value] : p.entries()) mixed.set(name, value);
        try {
            ineq::TightnessRanking r = ineq::tightness_compare(reg, ids, mixed);
            ++wins[r.tightest];
            rows.push_back({p, std::move(r)});
        } catch (const DomainError&) {
            ++skipped;
        }
    }

    err << "compare " << first.lhs_key << ": " << rows.size() << " rows, " << skipped << " skipped;";
    for (const std::string& id : ids) err << ' ' << id << " tightest " << wins[id] << 'x';
    err << '\n';

    emit(cfg, out, [&](std::ostream& os) {
        if (cfg.format == Format::Json) {
            ordered_json doc;
            doc["ids"] = ids;
            doc["claim"] = first.claim == ineq::Claim::AtLeast ? "lower" : "upper";
            doc["quantity"] = first.lhs_key;
            ordered_json arr = ordered_json::array();
            for (const Row& r : rows) {
                ordered_json row;
                ordered_json pt = ordered_json::object();
                for (const auto& [name, value] : r.point.entries()) pt[name] = value;
                row["point"] = pt;
                ordered_json b = ordered_json::object();
                for (const ineq::BoundEntry& e : r.ranking.bounds) b[e.id] = e.rhs_value;
                row["bounds"] = b;
                row["lhs"] = std::exp(r.ranking.lhs_log);
                row["tightest"] = r.ranking.tightest;
                arr.push_back(std::move(row));
            }
            doc["rows"] = std::move(arr);
            doc["skipped"] = skipped;
            os << doc.dump(2) << '\n';
        } else {
            for (const std::string& name : first.point_names) os << name << ',';
            for (const std::string& id : ids) os << id << ',';
            os << "lhs,tightest\n";
            for (const Row& r : rows) {
                for (const auto& entry : r.point.entries()) os << format_double(entry.second) << ',';
                for (const ineq::BoundEntry& e : r.ranking.bounds) os << format_double(e.rhs_value) << ',';
                os << format_double(std::exp(r.ranking.lhs_log)) << ',' << r.ranking.tightest << '\n';
            }
        }
    });
    return 0;
}

}  // namespace cmgamma::cli
