#include <cstdio>
#include <ostream>

#include "cmgamma/cli.hpp"
#include "json.hpp"

namespace cmgamma::cli {
namespace {

using nlohmann::ordered_json;

ordered_json bindings_json(const ineq::Bindings& b) {
    ordered_json j = ordered_json::object();
    for (const auto& [name, value] : b.entries()) j[name] = value;
    return j;
}

ordered_json offender_json(const std::optional<Offender>& w) {
    if (!w) return nullptr;
    return {{"z", w->z}, {"n", w->n}, {"value", w->value}};
}

ordered_json report_common(const CertReport& r) {
    ordered_json j;
    j["method"] = r.method;
    j["verdict"] = to_string(r.verdict);
    j["tol"] = r.tol;
    j["worst"] = offender_json(r.worst);
    j["diagnostics"] = r.diagnostics;
    return j;
}

ordered_json family_json(const RatioFamily& fam) {
    ordered_json j;
    j["kind"] = fam.kind();
    j["describe"] = fam.describe();
    j["lower_bound"] = fam.lower_bound();
    ordered_json terms = ordered_json::array();
    for (const GammaTerm& t : fam.gamma_terms()) terms.push_back({{"coef", t.coef}, {"shift", t.shift}});
    j["gamma_terms"] = terms;
    return j;
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_sweep_csv(std::ostream& os, const std::vector<ineq::SweepRecord>& records, bool header) {
    if (header) os << "id,params,point,lhs_log,rhs_log,margin,holds\n";
    for (const ineq::SweepRecord& r : records) {
        os << r.id << ',' << r.params.to_string() << ',' << r.point.to_string() << ','
           << format_double(r.lhs_log) << ',' << format_double(r.rhs_log) << ','
           << format_double(r.margin) << ',' << (r.holds ? "true" : "false") << '\n';
    }
}

void write_sweep_json(std::ostream& os, const std::vector<ineq::SweepRecord>& records,
                      std::size_t skipped) {
    ordered_json rows = ordered_json::array();
    for (const ineq::SweepRecord& r : records) {
        ordered_json row;
        row["id"] = r.id;
        row["params"] = bindings_json(r.params);
        row["point"] = bindings_json(r.point);
        row["lhs_log"] = r.lhs_log;
        row["rhs_log"] = r.rhs_log;
        row["margin"] = r.margin;
        row["holds"] = r.holds;
        rows.push_back(std::move(row));
    }
    ordered_json doc;
    doc["records"] = std::move(rows);
    doc["skipped"] = skipped;
    os << doc.dump(2) << '\n';
}

void write_cert_json(std::ostream& os, const CertReport& log_cm,
                     const std::vector<CertReport>& finite_diff, int exit_code) {
    ordered_json doc;
    doc["family"] = family_json(log_cm.family);
    doc["verdict"] = exit_code == 0 ? "certified" : exit_code == 2 ? "violated" : "inconclusive";
    doc["exit_code"] = exit_code;

    ordered_json lj = report_common(log_cm);
    if (log_cm.kernel_scan) {
        lj["kernel_scan"] = {{"min_value", log_cm.kernel_scan->min_value},
                             {"argmin_t", log_cm.kernel_scan->argmin_t},
                             {"min_relative", log_cm.kernel_scan->min_relative}};
    }
    ordered_json margins = ordered_json::array();
    for (const LogDerivMargin& m : log_cm.log_margins) {
        ordered_json row;
        row["z"] = m.z;
        row["n"] = m.n;
        row["quadrature"] = m.quadrature;
        row["quadrature_err"] = m.quadrature_err;
        row["polygamma"] = m.polygamma;
        row["polygamma_err"] = m.polygamma_err;
        row["paths_agree"] = m.paths_agree;
        if (!m.note.empty()) row["note"] = m.note;
        margins.push_back(std::move(row));
    }
    lj["margins"] = std::move(margins);
    doc["log_derivative"] = std::move(lj);

    ordered_json fds = ordered_json::array();
    for (const CertReport& r : finite_diff) {
        ordered_json fj = report_common(r);
        fj["h"] = r.fd_step;
        ordered_json rows = ordered_json::array();
        for (const FiniteDiffMargin& m : r.fd_margins) {
            rows.push_back({{"z", m.z}, {"n", m.n}, {"difference", m.difference},
                            {"scale", m.scale}, {"margin", m.margin}});
        }
        fj["margins"] = std::move(rows);
        fds.push_back(std::move(fj));
    }
    doc["finite_difference"] = std::move(fds);
    os << doc.dump(2) << '\n';
}

}  // namespace cmgamma::cli
