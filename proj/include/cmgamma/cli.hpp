#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cmgamma/cm_certify.hpp"
#include "cmgamma/inequalities.hpp"
#include "cmgamma/kernels.hpp"

namespace cmgamma::cli {

enum class Command { Audit, Certify, Bounds, Compare };
enum class Format { Csv, Json };

inline constexpr std::uint64_t kDefaultSeed = 42;

struct GridSpec {
    double min = 0.0;
    double max = 0.0;
    int count = 1;
    bool log = false;
};

struct RunConfig {
    Command command = Command::Audit;
    std::vector<std::string> ids;
    std::string family;  // certify: two-param | multi-param | majorized | symmetric
    std::string bounds;  // bounds: wallis | half-ratio | beta | ...
    ineq::Bindings params;
    std::vector<GridSpec> grids;  // one per free coordinate; the last is reused
    std::optional<std::size_t> samples;
    std::uint64_t seed = kDefaultSeed;
    std::string out_path;  // empty: standard output
    Format format = Format::Csv;
    std::optional<double> tol;
    int n_max = 8;
    double fd_step = 1e-2;
};

// "a=1,b=2", "a=[1,2,3]" or "a=5,5,b=0,9": bare numbers extend the previous
// name into a list (a1, a2, ...). UsageError on malformed input.
ineq::Bindings parse_params(std::string_view text);

// "min:max:count" or "min:max:count:log" (also ":linear").
GridSpec parse_grid(std::string_view text);
std::vector<double> grid_values(const GridSpec& g);

Format parse_format(std::string_view text);

RatioFamily parse_family(const std::string& kind, const ineq::Bindings& params);

// Bound groups understood by `bounds`, each a list of registry ids.
std::vector<std::string> bound_group(const std::string& name);
std::vector<std::string> bound_group_names();

int cmd_audit(const RunConfig& cfg, const ineq::Registry& reg, std::ostream& out, std::ostream& err);
int cmd_certify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_bounds(const RunConfig& cfg, const ineq::Registry& reg, std::ostream& out, std::ostream& err);
int cmd_compare(const RunConfig& cfg, const ineq::Registry& reg, std::ostream& out, std::ostream& err);

// Parses arguments (without the program name) and dispatches. Exit codes:
// 0 success, 1 usage or configuration error, 2 violation, 3 inconclusive.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const ineq::Registry& reg = ineq::Registry::standard());

// Report serialization, 17 significant digits for CSV.
std::string format_double(double v);
void write_sweep_csv(std::ostream& os, const std::vector<ineq::SweepRecord>& records, bool header = true);
void write_sweep_json(std::ostream& os, const std::vector<ineq::SweepRecord>& records,
                      std::size_t skipped);
void write_cert_json(std::ostream& os, const CertReport& log_cm,
                     const std::vector<CertReport>& finite_diff, int exit_code);

}  // namespace cmgamma::cli
