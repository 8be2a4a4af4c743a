#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cmgamma/cli.hpp"
#include "cmgamma/errors.hpp"
#include "json.hpp"

namespace cmgamma::cli {
namespace {

using nlohmann::json;

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

double parse_number(std::string_view text, std::string_view what) {
    const std::string t = trim(text);
    double v = 0.0;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (t.empty() || ec != std::errc{} || ptr != last) {
        throw UsageError("cannot parse number '" + t + "' in " + std::string(what));
    }
    return v;
}

bool is_name_start(char ch) { return std::isalpha(static_cast<unsigned char>(ch)) || ch == '_'; }

std::vector<std::string> split_top_level(std::string_view text) {
    std::vector<std::string> parts;
    std::string cur;
    int depth = 0;
    for (char ch : text) {
        if (ch == '[') ++depth;
        if (ch == ']') --depth;
        if ((ch == ',' || ch == ';') && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    return parts;
}

struct ParamEntry {
    std::string name;
    std::vector<double> values;
    bool list = false;
};

ineq::Bindings to_bindings(const std::vector<ParamEntry>& entries) {
    ineq::Bindings out;
    for (const ParamEntry& e : entries) {
        if (e.list || e.values.size() > 1) {
            out.set_list(e.name, e.values);
        } else {
            out.set(e.name, e.values.front());
        }
    }
    return out;
}

// Config-file values: strings use the flag syntax, objects map names to numbers or arrays.
ineq::Bindings params_from_json(const json& j) {
    if (j.is_string()) return parse_params(j.get<std::string>());
    if (!j.is_object()) throw UsageError("config: params must be a string or an object");
    std::vector<ParamEntry> entries;
    for (const auto& [name, value] : j.items()) {
        ParamEntry e{name, {}, value.is_array()};
        if (value.is_number()) {
            e.values.push_back(value.get<double>());
        } else if (value.is_array()) {
            for (const json& v : value) {
                if (!v.is_number()) throw UsageError("config: params." + name + " must hold numbers");
                e.values.push_back(v.get<double>());
            }
            if (e.values.empty()) throw UsageError("config: params." + name + " is empty");
        } else {
            throw UsageError("config: params." + name + " must be a number or an array");
        }
        entries.push_back(std::move(e));
    }
    return to_bindings(entries);
}

std::vector<std::string> strings_from_json(const json& j, const char* key) {
    if (j.is_string()) return {j.get<std::string>()};
    if (!j.is_array()) throw UsageError(std::string("config: ") + key + " must be a string or a list");
    std::vector<std::string> out;
    for (const json& v : j) {
        if (!v.is_string()) throw UsageError(std::string("config: ") + key + " entries must be strings");
        out.push_back(v.get<std::string>());
    }
    return out;
}

json load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file " + path);
    try {
        json j = json::parse(in);
        if (!j.is_object()) throw UsageError("config file " + path + " must hold a JSON object");
        return j;
    } catch (const json::exception& e) {
        throw UsageError("config file " + path + ": " + e.what());
    }
}

std::uint64_t parse_seed(const std::string& text, const char* source) {
    const std::string t = trim(text);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) {
        throw UsageError(std::string("invalid seed '") + t + "' from " + source);
    }
    return v;
}

// Raw command-line values; empty / unset means "not given".
struct Flags {
    std::vector<std::string> ids;
    std::string family;
    std::string bounds;
    std::vector<std::string> params;
    std::vector<std::string> grids;
    std::string samples;
    std::string seed;
    std::string out;
    std::string format;
    std::string tol;
    std::string n_max;
    std::string h;
    std::string config;
};

void add_common(CLI::App* sub, Flags& f) {
    sub->add_option("--params", f.params, "parameter bindings, e.g. a=1,b=1 or a=[5,5],b=[0,9]");
    sub->add_option("--grid", f.grids, "min:max:count[:log], one per free coordinate");
    sub->add_option("--out", f.out, "output path (default: standard output)");
    sub->add_option("--format", f.format, "csv or json");
    sub->add_option("--tol", f.tol, "tolerance override");
    sub->add_option("--config", f.config, "JSON config file; flags win on conflict");
}

RunConfig merge(Command command, const Flags& f) {
    RunConfig cfg;
    cfg.command = command;
    const json file = f.config.empty() ? json::object() : load_config_file(f.config);

    auto pick = [&](const std::string& flag, const char* key) -> std::optional<std::string> {
        if (!flag.empty()) return flag;
        if (file.contains(key)) {
            const json& v = file.at(key);
            if (v.is_string()) return v.get<std::string>();
            return v.dump();
        }
        return std::nullopt;
    };

    if (!f.ids.empty()) {
        cfg.ids = f.ids;
    } else if (file.contains("ids")) {
        cfg.ids = strings_from_json(file.at("ids"), "ids");
    } else if (file.contains("id")) {
        cfg.ids = strings_from_json(file.at("id"), "id");
    }

    cfg.family = pick(f.family, "family").value_or("");
    cfg.bounds = f.bounds;
    if (cfg.bounds.empty() && file.contains("bounds")) cfg.bounds = file.at("bounds").get<std::string>();

    if (!f.params.empty()) {
        for (const std::string& p : f.params) {
            const ineq::Bindings parsed = parse_params(p);
            for (const auto& [name, value] : parsed.entries()) cfg.params.set(name, value);
        }
    } else if (file.contains("params")) {
        cfg.params = params_from_json(file.at("params"));
    }

    if (!f.grids.empty()) {
        for (const std::string& g : f.grids) cfg.grids.push_back(parse_grid(g));
    } else if (file.contains("grid")) {
        for (const std::string& g : strings_from_json(file.at("grid"), "grid")) cfg.grids.push_back(parse_grid(g));
    }

    if (auto s = pick(f.samples, "samples")) {
        const double n = parse_number(*s, "--samples");
        if (!(n >= 1.0) || n != std::floor(n)) throw UsageError("--samples must be a positive integer");
        cfg.samples = static_cast<std::size_t>(n);
    }

    if (auto s = pick(f.seed, "seed")) {
        cfg.seed = parse_seed(*s, "--seed");
    } else if (const char* env = std::getenv("CMGAMMA_SEED"); env != nullptr && *env != '\0') {
        cfg.seed = parse_seed(env, "CMGAMMA_SEED");
    }

    cfg.out_path = pick(f.out, "out").value_or("");
    if (auto s = pick(f.format, "format")) cfg.format = parse_format(*s);
    if (auto s = pick(f.tol, "tol")) {
        cfg.tol = parse_number(*s, "--tol");
        if (!(*cfg.tol > 0.0)) throw UsageError("--tol must be > 0");
    }
    if (auto s = pick(f.n_max, "n_max")) {
        const double n = parse_number(*s, "--n-max");
        if (!(n >= 1.0) || n != std::floor(n) || n > 160.0) throw UsageError("--n-max must be an integer in [1, 160]");
        cfg.n_max = static_cast<int>(n);
    }
    if (auto s = pick(f.h, "h")) {
        cfg.fd_step = parse_number(*s, "--h");
        if (!(cfg.fd_step > 0.0)) throw UsageError("--h must be > 0");
    }
    return cfg;
}

}  // namespace

ineq::Bindings parse_params(std::string_view text) {
    std::vector<ParamEntry> entries;
    for (const std::string& raw : split_top_level(text)) {
        const std::string part = trim(raw);
        if (part.empty()) throw UsageError("empty entry in params '" + std::string(text) + "'");
        const std::size_t eq = part.find('=');
        if (eq == std::string::npos) {
            // Bare number: continues the previous name as a list.
            if (entries.empty()) throw UsageError("params must start with name=value");
            entries.back().values.push_back(parse_number(part, "params"));
            entries.back().list = true;
            continue;
        }
        const std::string name = trim(part.substr(0, eq));
        const std::string value = trim(part.substr(eq + 1));
        if (name.empty() || !is_name_start(name.front()) ||
            !std::all_of(name.begin(), name.end(), [](char ch) {
                return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_';
            })) {
            throw UsageError("invalid parameter name '" + name + "'");
        }
        for (const ParamEntry& e : entries) {
            if (e.name == name) throw UsageError("parameter " + name + " given twice");
        }
        ParamEntry e{name, {}, false};
        if (!value.empty() && value.front() == '[') {
            if (value.back() != ']') throw UsageError("unterminated list for " + name);
            e.list = true;
            for (const std::string& item : split_top_level(value.substr(1, value.size() - 2))) {
                e.values.push_back(parse_number(item, "params list " + name));
            }
        } else {
            e.values.push_back(parse_number(value, "params value " + name));
        }
        entries.push_back(std::move(e));
    }
    return to_bindings(entries);
}

GridSpec parse_grid(std::string_view text) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : text) {
        if (ch == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    if (parts.size() != 3 && parts.size() != 4) {
        throw UsageError("grid must be min:max:count[:log], got '" + std::string(text) + "'");
    }
    GridSpec g;
    g.min = parse_number(parts[0], "grid min");
    g.max = parse_number(parts[1], "grid max");
    const double count = parse_number(parts[2], "grid count");
    if (!(count >= 1.0) || count != std::floor(count) || count > 1e7) {
        throw UsageError("grid count must be an integer >= 1");
    }
    g.count = static_cast<int>(count);
    if (parts.size() == 4) {
        const std::string spacing = trim(parts[3]);
        if (spacing == "log") {
            g.log = true;
        } else if (spacing != "linear" && spacing != "lin") {
            throw UsageError("grid spacing must be linear or log, got '" + spacing + "'");
        }
    }
    if (!std::isfinite(g.min) || !std::isfinite(g.max) || g.max < g.min) {
        throw UsageError("grid needs finite min <= max");
    }
    if (g.log && !(g.min > 0.0)) throw UsageError("log grid needs min > 0");
    return g;
}

std::vector<double> grid_values(const GridSpec& g) {
    std::vector<double> v(static_cast<std::size_t>(g.count));
    if (g.count == 1) {
        v[0] = g.min;
        return v;
    }
    const double lo = g.log ? std::log(g.min) : g.min;
    const double hi = g.log ? std::log(g.max) : g.max;
    const double step = (hi - lo) / (g.count - 1);
    for (int i = 0; i < g.count; ++i) {
        const double t = lo + step * i;
        v[i] = g.log ? std::exp(t) : t;
    }
    // Endpoints exactly as given.
    v.front() = g.min;
    v.back() = g.max;
    return v;
}

Format parse_format(std::string_view text) {
    const std::string t = trim(text);
    if (t == "csv") return Format::Csv;
    if (t == "json") return Format::Json;
    throw UsageError("format must be csv or json, got '" + t + "'");
}

RatioFamily parse_family(const std::string& kind, const ineq::Bindings& params) {
    auto scalar = [&](const char* name) {
        if (auto v = params.find(name)) return *v;
        throw UsageError(kind + " family needs a scalar parameter " + std::string(name));
    };
    auto list = [&](const char* name) {
        if (params.has_list(name)) return params.list(name);
        if (auto v = params.find(name)) return std::vector<double>{*v};
        throw UsageError(kind + " family needs a list parameter " + std::string(name));
    };
    auto only = [&](std::initializer_list<std::string_view> allowed) {
        for (const auto& [name, value] : params.entries()) {
            bool ok = false;
            for (std::string_view a : allowed) {
                if (name == a) ok = true;
                if (name.size() > a.size() && name.compare(0, a.size(), a) == 0 &&
                    std::all_of(name.begin() + a.size(), name.end(),
                                [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
                    ok = true;
                }
            }
            if (!ok) throw UsageError(kind + " family has no parameter " + name);
        }
    };
    if (kind == "two-param") {
        only({"a", "b"});
        return RatioFamily(TwoParam{scalar("a"), scalar("b")});
    }
    if (kind == "multi-param") {
        only({"a"});
        return RatioFamily(MultiParam{list("a")});
    }
    if (kind == "majorized") {
        only({"a", "b"});
        return RatioFamily(Majorized{list("a"), list("b")});
    }
    if (kind == "symmetric") {
        only({"a"});
        return RatioFamily(Symmetric{scalar("a")});
    }
    throw UsageError("unknown family '" + kind + "' (two-param, multi-param, majorized, symmetric)");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const ineq::Registry& reg) {
    CLI::App app{"Gamma-ratio complete monotonicity certification and inequality audits", "cmgamma"};
    app.require_subcommand(1);
    Flags f;

    CLI::App* audit = app.add_subcommand("audit", "audit registered inequalities over a grid or samples");
    audit->add_option("--id", f.ids, "inequality id or group (repeatable)");
    audit->add_option("--samples", f.samples, "number of seeded random domain points");
    audit->add_option("--seed", f.seed, "random seed (default $CMGAMMA_SEED or 42)");
    add_common(audit, f);

    CLI::App* certify = app.add_subcommand("certify", "certify complete monotonicity of a ratio family");
    certify->set_help_flag("--help", "Print this help message and exit");
    certify->add_option("--family", f.family, "two-param | multi-param | majorized | symmetric");
    certify->add_option("--n-max", f.n_max, "highest derivative order");
    certify->add_option("--h", f.h, "finite-difference step");
    add_common(certify, f);

    CLI::App* bounds = app.add_subcommand("bounds", "evaluate bounds next to the exact value");
    bounds->add_option("name", f.bounds, "bound group")->required();
    add_common(bounds, f);

    CLI::App* compare = app.add_subcommand("compare", "rank bounds on a common expression over a grid");
    compare->add_option("--id", f.ids, "inequality id or group (repeatable)");
    add_common(compare, f);

    std::vector<const char*> argv{"cmgamma"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }

    try {
        if (*audit) return cmd_audit(merge(Command::Audit, f), reg, out, err);
        if (*certify) return cmd_certify(merge(Command::Certify, f), out, err);
        if (*bounds) return cmd_bounds(merge(Command::Bounds, f), reg, out, err);
        return cmd_compare(merge(Command::Compare, f), reg, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace cmgamma::cli
