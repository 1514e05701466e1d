#include "vwave/config.hpp"

#include <fstream>
#include "json.hpp"
#include <numbers>
#include <set>
#include <sstream>

#include "vwave/errors.hpp"
#include "vwave/expression.hpp"

namespace vwave {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& field, const std::string& msg) {
    throw Error(ErrorKind::Usage, "config field '" + field + "': " + msg);
}

void only_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
    if (!obj.is_object()) bad(where, "must be an object");
    for (const auto& [k, v] : obj.items())
        if (!allowed.count(k)) bad(where.empty() ? k : where + "." + k, "unknown field");
}

double number(const json& obj, const std::string& key, const std::string& where, std::optional<double> def = {}) {
    const std::string field = where + "." + key;
    if (!obj.contains(key)) {
        if (def) return *def;
        bad(field, "required");
    }
    if (!obj[key].is_number()) bad(field, "must be a number");
    return obj[key].get<double>();
}

int integer(const json& obj, const std::string& key, const std::string& where, int def) {
    if (!obj.contains(key)) return def;
    if (!obj[key].is_number_integer()) bad(where + "." + key, "must be an integer");
    return obj[key].get<int>();
}

Interval interval(const json& obj, const std::string& key, const std::string& where, std::optional<Interval> def = {}) {
    const std::string field = where + "." + key;
    if (!obj.contains(key)) {
        if (def) return *def;
        bad(field, "required");
    }
    const json& a = obj[key];
    if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number())
        bad(field, "must be a two-element numeric array");
    Interval iv{a[0].get<double>(), a[1].get<double>()};
    if (!(iv.hi > iv.lo)) bad(field, "needs lo < hi");
    return iv;
}

/// A data function: expression string in x, a number, or {"table": {"x": [...], "value": [...]}}.
JetFunction data_function(const json& obj, const std::string& key, const std::string& where, bool& tabulated) {
    const std::string field = where + "." + key;
    if (!obj.contains(key)) bad(field, "required");
    const json& v = obj[key];
    try {
        if (v.is_number()) return Expression::parse(std::to_string(v.get<double>()), "x").as_function();
        if (v.is_string()) return Expression::parse(v.get<std::string>(), "x").as_function();
        if (v.is_object() && v.contains("table")) {
            only_keys(v, field, {"table"});
            const json& t = v["table"];
            only_keys(t, field + ".table", {"x", "value"});
            if (!t.contains("x") || !t.contains("value")) bad(field + ".table", "needs x and value arrays");
            tabulated = true;
            return tabulated_function(t["x"].get<std::vector<double>>(), t["value"].get<std::vector<double>>());
        }
    } catch (const Error& e) {
        bad(field, e.what());
    } catch (const json::exception& e) {
        bad(field, e.what());
    }
    bad(field, "must be an expression string, a number, or a table object");
}

MaterialModel material(const json& m) {
    const std::string where = "material";
    only_keys(m, where, {"preset", "shift", "k1", "c", "a", "u_domain", "m0"});
    if (!m.contains("preset") || !m["preset"].is_string()) bad(where + ".preset", "required string");
    const std::string preset = m["preset"].get<std::string>();
    std::optional<MaterialModel> model;
    if (preset == "linear") {
        model = linear_material(number(m, "shift", where, 2.0), interval(m, "u_domain", where, Interval{-10.0, 10.0}));
    } else if (preset == "saxton-trig") {
        const double third = std::numbers::pi / 3.0;
        model = saxton_trig_material(number(m, "k1", where, 1.0), number(m, "shift", where, 2.0),
                                     interval(m, "u_domain", where, Interval{-third, third}));
    } else if (preset == "custom") {
        if (!m.contains("c") || !m["c"].is_string()) bad(where + ".c", "required expression in u");
        if (!m.contains("a") || !m["a"].is_string()) bad(where + ".a", "required expression in u");
        try {
            model = custom_material(m["c"].get<std::string>(), m["a"].get<std::string>(), interval(m, "u_domain", where));
        } catch (const Error& e) {
            bad(where, e.what());
        }
    } else {
        bad(where + ".preset", "unknown preset '" + preset + "' (linear, saxton-trig, custom)");
    }
    if (m.contains("m0")) model->declared_m0 = number(m, "m0", where);
    return *model;
}

}  // namespace

ScenarioConfig parse_scenario_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Usage, std::string("config is not valid JSON: ") + e.what());
    }
    only_keys(root, "", {"schema_version", "name", "material", "data", "grid", "solver", "converge", "sweep",
                         "crosscheck"});
    if (!root.contains("schema_version") || !root["schema_version"].is_number_integer())
        bad("schema_version", "required integer");
    if (root["schema_version"].get<int>() != kSchemaVersion)
        bad("schema_version", "unsupported version " + root["schema_version"].dump());
    if (!root.contains("material")) bad("material", "required");
    if (!root.contains("data")) bad("data", "required");

    ScenarioConfig cfg{root.value("name", std::string("scenario")), material(root["material"]), ScenarioData{}, {},
                       {}, {}, {}, {}, {}};
    const json& d = root["data"];
    const std::string dw = "data";
    only_keys(d, dw, {"phi1", "phi2", "psi1", "psi2", "lambda", "y_range", "psi0"});
    cfg.data.name = cfg.name;
    cfg.data.phi1 = number(d, "phi1", dw, 0.0);
    bool tab = false;
    cfg.data.phi2 = data_function(d, "phi2", dw, tab);
    cfg.data.psi1 = data_function(d, "psi1", dw, tab);
    cfg.data.psi2 = data_function(d, "psi2", dw, tab);
    cfg.data.tabulated = tab;
    cfg.data.y_range = interval(d, "y_range", dw);
    if (d.contains("psi0")) cfg.data.declared_psi0 = number(d, "psi0", dw);
    if (d.contains("lambda")) {
        const json& l = d["lambda"];
        if (l.is_number()) cfg.data.lambda = l.get<double>();
        else if (l.is_object()) {
            only_keys(l, "data.lambda", {"cap_multiple"});
            cfg.lambda_cap_multiple = number(l, "cap_multiple", "data.lambda");
        } else bad("data.lambda", "must be a number or {\"cap_multiple\": s}");
    }

    if (root.contains("grid")) {
        const json& g = root["grid"];
        only_keys(g, "grid", {"n_tau", "n_y", "delta"});
        cfg.grid.n_tau = integer(g, "n_tau", "grid", cfg.grid.n_tau);
        cfg.grid.n_y = integer(g, "n_y", "grid", cfg.grid.n_y);
        if (g.contains("delta")) cfg.grid.delta = number(g, "delta", "grid");
    }
    if (root.contains("solver")) {
        const json& s = root["solver"];
        only_keys(s, "solver", {"tol", "max_iters", "eps_dd", "max_halvings"});
        cfg.solver.tol = number(s, "tol", "solver", cfg.solver.tol);
        cfg.solver.max_iters = integer(s, "max_iters", "solver", cfg.solver.max_iters);
        cfg.solver.eps_dd = number(s, "eps_dd", "solver", cfg.solver.eps_dd);
        cfg.solver.max_halvings = integer(s, "max_halvings", "solver", cfg.solver.max_halvings);
    }
    if (root.contains("converge")) {
        only_keys(root["converge"], "converge", {"grids"});
        cfg.converge.grids = integer(root["converge"], "grids", "converge", cfg.converge.grids);
    }
    if (root.contains("sweep")) {
        const json& s = root["sweep"];
        only_keys(s, "sweep", {"scale", "points", "extra_multiples"});
        cfg.sweep.scale = number(s, "scale", "sweep", cfg.sweep.scale);
        cfg.sweep.points = integer(s, "points", "sweep", cfg.sweep.points);
        if (s.contains("extra_multiples")) {
            if (!s["extra_multiples"].is_array()) bad("sweep.extra_multiples", "must be an array of numbers");
            for (const auto& v : s["extra_multiples"]) {
                if (!v.is_number()) bad("sweep.extra_multiples", "must be an array of numbers");
                cfg.sweep.extra_multiples.push_back(v.get<double>());
            }
        }
    }
    if (root.contains("crosscheck")) {
        const json& c = root["crosscheck"];
        only_keys(c, "crosscheck", {"points", "seed"});
        cfg.crosscheck.points = integer(c, "points", "crosscheck", cfg.crosscheck.points);
        if (c.contains("seed")) {
            if (!c["seed"].is_number_unsigned()) bad("crosscheck.seed", "must be a non-negative integer");
            cfg.crosscheck.seed = c["seed"].get<std::uint64_t>();
        }
    }
    return cfg;
}

ScenarioConfig load_scenario_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Usage, "cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario_config(ss.str());
}

}  // namespace vwave
