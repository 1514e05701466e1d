#include "vwave/harness.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "vwave/crosscheck.hpp"
#include "vwave/substitution.hpp"

namespace vwave {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr double kExactFloor = 1e-12;
constexpr double kMinOrder = 1.8;

/// Comma separated table at full double precision.
class CsvWriter {
public:
    CsvWriter(const fs::path& path, std::initializer_list<const char*> header) : out_(path) {
        if (!out_) throw Error(ErrorKind::Usage, "cannot write '" + path.string() + "'");
        out_ << std::setprecision(17);
        bool first = true;
        for (const char* h : header) {
            out_ << (first ? "" : ",") << h;
            first = false;
        }
        out_ << '\n';
    }

    template <typename... Ts>
    void row(const Ts&... values) {
        bool first = true;
        ((out_ << (first ? "" : ",") << values, first = false), ...);
        out_ << '\n';
    }

private:
    std::ofstream out_;
};

fs::path prepare_out_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw Error(ErrorKind::Usage, "output directory '" + dir + "' is not writable");
    return fs::path(dir);
}

void write_json(const fs::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::Usage, "cannot write '" + path.string() + "'");
    out << j.dump(2) << '\n';
}

json to_json(const ValidationReport& v) {
    json checks = json::array();
    for (const auto& c : v.checks)
        checks.push_back({{"name", c.name}, {"passed", c.passed}, {"worst", c.worst}, {"bound", c.bound},
                          {"detail", c.detail}});
    return {{"passed", v.passed}, {"m0", v.m0}, {"psi0", v.psi0}, {"y_independent", v.y_independent},
            {"checks", checks}};
}

json to_json(const WindowChoice& w) {
    return {{"K", w.K}, {"M", w.M}, {"lambda_cap", w.lambda_cap}, {"delta0", w.delta0},
            {"delta_theory", w.delta_theory}, {"lambda_above_cap", w.lambda_warning}};
}

json to_json(const IterationReport& r) {
    json records = json::array();
    for (const auto& x : r.records)
        records.push_back({{"iteration", x.iteration}, {"distance", x.distance}, {"ratio", x.ratio},
                           {"p2_max", x.p2_max}, {"p3_max", x.p3_max}, {"min_denominator", x.min_denominator},
                           {"argmax_tau", x.argmax_tau}, {"argmax_y", x.argmax_y}});
    return {{"converged", r.converged},
            {"iterations", r.iterations},
            {"kappa", r.kappa},
            {"kappa_fit", r.kappa_fit},
            {"fit_log_residual", r.fit_log_residual},
            {"fit_log_residual_abs", r.fit_log_residual_abs},
            {"records", records}};
}

json to_json(const ResidualNorms& n) { return {{"sup", n.sup}, {"l2", n.l2}}; }

json to_json(const ConsistencyReport& c) {
    return {{"H1", to_json(c.H1)},
            {"H2", to_json(c.H2)},
            {"H1_early_levels", to_json(c.H1_early)},
            {"H2_early_levels", to_json(c.H2_early)},
            {"pde_u", to_json(c.pde1)},
            {"pde_v", to_json(c.pde2)},
            {"pde_roundoff", c.pde_roundoff},
            {"roundtrip_max", c.roundtrip_max},
            {"initial_data_max", c.initial_data_max},
            {"t_end", c.t_end},
            {"lattice_rows", c.lattice_rows},
            {"lattice_cols", c.lattice_cols}};
}

json to_json(const ClassMonitors& m) {
    return {{"initial_line_zero", m.initial_line_zero},
            {"p2_max", m.p2_max},
            {"M", m.M},
            {"p3_max", m.p3_max},
            {"denominator_min", m.denominator_min},
            {"denominator_bound", m.denominator_bound},
            {"jacobian_min", m.jacobian_min},
            {"jacobian_bound", m.jacobian_bound},
            {"passed", m.passed()}};
}

json describe_outcome(const SolveOutcome& o, const HodographGrid* grid) {
    json attempts = json::array();
    for (const auto& a : o.attempts)
        attempts.push_back({{"delta", a.delta}, {"converged", a.converged}, {"iterations", a.iterations},
                            {"kappa", a.kappa}, {"message", a.message}});
    json j{{"validation", to_json(o.validation)},
           {"lambda", o.lambda},
           {"attempts", attempts},
           {"delta_requested", o.delta_requested},
           {"delta_used", o.delta_used}};
    if (o.validation.passed) {
        j["window"] = to_json(o.window);
        j["convergence"] = to_json(o.report);
    }
    if (grid)
        j["grid"] = {{"n_tau", grid->n_tau}, {"n_y_total", grid->n_y}, {"buffer", grid->buffer},
                     {"h_tau", grid->h_tau()}, {"h_y", grid->h_y}, {"y_first", grid->y_first()},
                     {"y_last", grid->y_last()}};
    return j;
}

void write_field_csv(const fs::path& path, const HodographGrid& g, const FieldQuartet& f) {
    CsvWriter csv(path, {"k", "m", "tau", "y", "U1", "U2", "U3", "U4"});
    for (int k = 0; k < g.levels(); ++k)
        for (int m = g.first_reported(); m <= g.last_reported(); ++m)
            csv.row(k, m - g.first_reported(), g.tau(k), g.y(m), f(0, k, m), f(1, k, m), f(2, k, m), f(3, k, m));
}

void write_physical_csv(const fs::path& path, const PhysicalSolution& s) {
    CsvWriter csv(path, {"k", "column", "tau", "t", "x", "u", "v", "R1", "S1", "R2", "S2", "J", "H1", "H2"});
    for (int k = 0; k < s.levels; ++k)
        for (int c = 0; c < s.columns; ++c) {
            const PhysicalNode& n = s.at(k, c);
            csv.row(k, c, n.tau, n.t, n.x, n.u, n.v, n.R1, n.S1, n.R2, n.S2, n.J, n.H1, n.H2);
        }
}

int failure_status(const SolveOutcome& o) { return exit_code(o.failure.value_or(ErrorKind::Contraction)); }

/// lambda from --lambda, else a cap multiple from the file, else the file value.
void resolve_lambda(ScenarioConfig& sc, const RunConfig& rc) {
    if (rc.lambda) {
        sc.data.lambda = *rc.lambda;
        return;
    }
    if (!sc.lambda_cap_multiple) return;
    ScenarioData probe = sc.data;
    probe.lambda = 0.0;
    const ValidationReport v = validate_assumptions(sc.model, probe);
    // A failing scenario is reported by the solve itself.
    if (v.passed) sc.data.lambda = *sc.lambda_cap_multiple * scenario_window(sc.model, probe, v).lambda_cap;
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
    if (name == "solve") return Command::Solve;
    if (name == "crosscheck") return Command::Crosscheck;
    if (name == "converge") return Command::Converge;
    if (name == "sweep-lambda") return Command::SweepLambda;
    return std::nullopt;
}

const char* to_string(Command command) noexcept {
    switch (command) {
    case Command::Solve: return "solve";
    case Command::Crosscheck: return "crosscheck";
    case Command::Converge: return "converge";
    case Command::SweepLambda: return "sweep-lambda";
    }
    return "?";
}

ResolvedRun resolve_run(const RunConfig& config) {
    ResolvedRun r{load_scenario_config(config.config_path), {}};
    ScenarioConfig& sc = r.scenario;
    if (config.n_tau) sc.grid.n_tau = *config.n_tau;
    if (config.n_y) sc.grid.n_y = *config.n_y;
    if (config.delta) sc.grid.delta = *config.delta;
    if (config.tol) sc.solver.tol = *config.tol;
    if (config.max_iters) sc.solver.max_iters = *config.max_iters;
    if (config.eps_dd) sc.solver.eps_dd = *config.eps_dd;

    if (sc.grid.n_tau < 8) throw Error(ErrorKind::Usage, "n_tau must be >= 8 (grid.n_tau / --n-tau)");
    if (sc.grid.n_y < 8) throw Error(ErrorKind::Usage, "n_y must be >= 8 (grid.n_y / --n-y)");
    if (!(sc.solver.tol > 0.0)) throw Error(ErrorKind::Usage, "tol must be > 0 (solver.tol / --tol)");
    if (sc.grid.delta && !(*sc.grid.delta > 0.0))
        throw Error(ErrorKind::Usage, "delta must be > 0 (grid.delta / --delta)");
    if (sc.solver.max_iters < 1) throw Error(ErrorKind::Usage, "max_iters must be >= 1 (solver.max_iters)");
    if (sc.solver.max_halvings < 0) throw Error(ErrorKind::Usage, "solver.max_halvings must be >= 0");
    if (!(sc.solver.eps_dd > 0.0)) throw Error(ErrorKind::Usage, "solver.eps_dd must be > 0");
    resolve_lambda(sc, config);

    r.settings = SolveSettings{sc.grid.n_tau, sc.grid.n_y, sc.grid.delta, sc.solver.tol, sc.solver.max_iters,
                               sc.solver.eps_dd, sc.solver.max_halvings};
    return r;
}

int run_solve(const RunConfig& config, std::ostream& log) {
    const ResolvedRun run = resolve_run(config);
    const fs::path out = prepare_out_dir(config.out_dir);
    const ScenarioConfig& sc = run.scenario;

    SolveOutcome o = solve_scenario(sc.model, sc.data, run.settings);
    json report{{"schema_version", kSchemaVersion}, {"command", "solve"}, {"scenario", sc.name}};
    report.update(describe_outcome(o, o.problem ? &o.problem->grid() : nullptr));
    if (o.window.lambda_warning)
        log << "warning: |lambda| = " << std::abs(o.lambda) << " exceeds the lambda cap " << o.window.lambda_cap
            << '\n';

    int status = 0;
    std::string message = "ok";
    if (!o.converged) {
        status = failure_status(o);
        message = o.failure_message;
    } else {
        write_field_csv(out / "field.csv", o.problem->grid(), o.field);
        try {
            const Reconstruction rec = reconstruct(*o.problem, sc.model, sc.data, o.field);
            write_physical_csv(out / "physical.csv", rec.solution);
            report["residuals"] = to_json(rec.report);
            report["monitors"] = to_json(class_monitors(o, rec.report));
        } catch (const Error& e) {
            status = exit_code(e.kind());
            message = e.what();
        }
        json oracle{{"applicable", o.validation.y_independent}};
        if (o.validation.y_independent)
            oracle["max_abs_deviation"] = ode_reference_deviation(sc.model, sc.data, *o.problem, o.field);
        report["ode_reference"] = oracle;
    }
    report["status"] = message;
    report["exit_code"] = status;
    write_json(out / "report.json", report);

    if (status == 0)
        log << "solve: converged in " << o.report.iterations << " iterations, kappa = " << o.report.kappa
            << ", delta = " << o.delta_used << '\n';
    else
        log << "solve: " << message << '\n';
    return status;
}

int run_crosscheck(const RunConfig& config, std::ostream& log) {
    const ResolvedRun run = resolve_run(config);
    const fs::path out = prepare_out_dir(config.out_dir);
    const ScenarioConfig& sc = run.scenario;

    ScenarioData base = sc.data;
    base.lambda = 0.0;
    const ValidationReport v = validate_assumptions(sc.model, base);
    require_valid(v);
    const ClassBounds bounds{v.m0, v.psi0};
    const WindowChoice w = scenario_window(sc.model, base, v);
    const double delta = run.settings.delta.value_or(w.delta_theory);

    CrosscheckOptions opts;
    opts.points = sc.crosscheck.points;
    opts.seed = sc.crosscheck.seed;
    opts.eps_dd = run.settings.eps_dd;

    CsvWriter csv(out / "crosscheck.csv",
                  {"variant", "lambda", "family", "lambda_bearing", "max_rel", "lambda_part", "tau", "y", "U1", "U2",
                   "U3", "U4", "implemented", "rederived", "passed"});
    json variants = json::array();
    bool all_passed = true;
    const std::pair<const char*, double> cases[] = {{"lambda-0", 0.0}, {"lambda-cap", w.lambda_cap}};
    for (const auto& [name, lambda] : cases) {
        ScenarioData data = sc.data;
        data.lambda = lambda;
        const CrosscheckResult r = run_coefficient_crosscheck(sc.model, data, bounds, delta, opts);
        for (const auto& f : r.families)
            csv.row(name, lambda, f.name, f.lambda_bearing ? 1 : 0, f.max_rel, f.lambda_part, f.worst_tau, f.worst_y,
                    f.worst_U[0], f.worst_U[1], f.worst_U[2], f.worst_U[3], f.implemented, f.rederived,
                    f.max_rel <= r.tolerance ? 1 : 0);
        const FamilyDeviation& worst = r.worst();
        variants.push_back({{"variant", name},
                            {"lambda", lambda},
                            {"passed", r.passed},
                            {"points", r.points},
                            {"tolerance", r.tolerance},
                            {"equation_max_rel", r.equation_max_rel},
                            {"worst_family", worst.name},
                            {"worst_max_rel", worst.max_rel}});
        if (!r.passed) {
            all_passed = false;
            std::ostringstream msg;
            msg << std::setprecision(17) << "crosscheck (" << name << "): " << worst.name << " deviates by "
                << worst.max_rel << " at tau = " << worst.worst_tau << ", y = " << worst.worst_y << ", U = ("
                << worst.worst_U[0] << ", " << worst.worst_U[1] << ", " << worst.worst_U[2] << ", "
                << worst.worst_U[3] << "): implemented " << worst.implemented << ", rederived " << worst.rederived;
            log << msg.str() << '\n';
        } else {
            log << "crosscheck (" << name << "): all 20 families within " << r.tolerance << ", worst " << worst.name
                << " at " << worst.max_rel << '\n';
        }
    }

    if (config.dump_coefficients) {
        const DerivedBoundary boundary(sc.model, sc.data);
        const LineConstants line = line_constants(sc.model, sc.data.phi1);
        CsvWriter dump(out / "coefficients.csv",
                       {"tau", "y", "row", "T1", "T2", "T3", "T4", "F", "rhs_assembled", "rhs_direct"});
        const Interval yr = sc.data.y_range;
        for (int ti = 1; ti <= 4; ++ti)
            for (int yi = 0; yi < 5; ++yi) {
                SourceContext ctx{make_level(sc.model, sc.data.phi1, delta * ti / 4.0, run.settings.eps_dd), line,
                                  boundary.at(yr.lo + yr.length() * yi / 4.0), {}, sc.data.lambda, bounds};
                const SourceTerms t = eval_terms(ctx);
                const auto assembled = assemble_rhs(t, ctx.U, ctx.tau());
                const auto direct = direct_substitution_rhs(ctx);
                for (int i = 0; i < 4; ++i)
                    dump.row(ctx.tau(), ctx.y(), i + 1, t.T[i][0], t.T[i][1], t.T[i][2], t.T[i][3], t.F[i],
                             assembled[i], direct[i]);
            }
    }

    write_json(out / "report.json", {{"schema_version", kSchemaVersion},
                                     {"command", "crosscheck"},
                                     {"scenario", sc.name},
                                     {"delta", delta},
                                     {"variants", variants},
                                     {"passed", all_passed}});
    return all_passed ? 0 : kVerificationFailed;
}

int run_converge(const RunConfig& config, std::ostream& log) {
    const ResolvedRun run = resolve_run(config);
    const ScenarioConfig& sc = run.scenario;
    const int grids = sc.converge.grids;
    if (grids < 3) throw Error(ErrorKind::Usage, "config field 'converge.grids': needs at least 3 grids");
    if (grids > 6) throw Error(ErrorKind::Usage, "config field 'converge.grids': at most 6 grids");
    const fs::path out = prepare_out_dir(config.out_dir);

    struct Level {
        SolveOutcome outcome;
        ConsistencyReport consistency;
    };
    std::vector<Level> levels;
    json runs = json::array();
    SolveSettings s = run.settings;
    for (int r = 0; r < grids; ++r) {
        s.n_tau = run.settings.n_tau << r;
        s.n_y = ((run.settings.n_y - 1) << r) + 1;
        SolveOutcome o = solve_scenario(sc.model, sc.data, s);
        json entry{{"n_tau", s.n_tau}, {"n_y", s.n_y}};
        entry.update(describe_outcome(o, o.problem ? &o.problem->grid() : nullptr));
        int status = o.converged ? 0 : failure_status(o);
        std::string message = o.converged ? "ok" : o.failure_message;
        ConsistencyReport cons;
        if (o.converged) {
            try {
                cons = reconstruct(*o.problem, sc.model, sc.data, o.field).report;
                entry["residuals"] = to_json(cons);
            } catch (const Error& e) {
                status = exit_code(e.kind());
                message = e.what();
            }
        }
        entry["status"] = message;
        runs.push_back(entry);
        if (status != 0) {
            log << "converge: grid n_tau = " << s.n_tau << " failed: " << message << '\n';
            write_json(out / "report.json", {{"schema_version", kSchemaVersion},
                                             {"command", "converge"},
                                             {"scenario", sc.name},
                                             {"runs", runs},
                                             {"passed", false}});
            return status;
        }
        // Finer grids keep the delta the coarsest grid settled on.
        s.delta = o.delta_used;
        s.max_halvings = 0;
        levels.push_back({std::move(o), cons});
    }

    CsvWriter csv(out / "orders.csv",
                  {"quantity", "n_tau_coarse", "n_tau_fine", "value_coarse", "value_fine", "order", "passed"});
    json orders = json::array();
    bool all_passed = true;
    // Values at or below the rounding level of their own stencil count as exact.
    auto record = [&](const char* q, int nc, int nf, double ec, double ef, double floor_c = 0.0,
                      double floor_f = 0.0) {
        const bool exact = ec < std::max(kExactFloor, floor_c) && ef < std::max(kExactFloor, floor_f);
        const double order = exact ? 0.0 : std::log2(ec / ef);
        const bool ok = exact || order >= kMinOrder;
        all_passed = all_passed && ok;
        if (exact) csv.row(q, nc, nf, ec, ef, "exact", 1);
        else csv.row(q, nc, nf, ec, ef, order, ok ? 1 : 0);
        json j{{"quantity", q}, {"n_tau_coarse", nc}, {"n_tau_fine", nf}, {"value_coarse", ec},
               {"value_fine", ef}, {"passed", ok}};
        if (exact) j["order"] = "exact";
        else j["order"] = order;
        orders.push_back(j);
    };

    // Successive differences of the fixed point on the coarse nodes.
    std::vector<double> diffs;
    for (int r = 0; r + 1 < grids; ++r) {
        const HodographGrid& a = levels[r].outcome.problem->grid();
        const HodographGrid& b = levels[r + 1].outcome.problem->grid();
        const FieldQuartet& fa = levels[r].outcome.field;
        const FieldQuartet& fb = levels[r + 1].outcome.field;
        double e = 0.0;
        for (int k = 0; k < a.levels(); ++k)
            for (int m = a.first_reported(); m <= a.last_reported(); ++m) {
                const int mb = b.first_reported() + 2 * (m - a.first_reported());
                for (int i = 0; i < 4; ++i) e = std::max(e, std::abs(fa(i, k, m) - fb(i, 2 * k, mb)));
            }
        diffs.push_back(e);
    }
    const auto nt = [&](int r) { return levels[r].outcome.problem->grid().n_tau; };
    for (int r = 0; r + 1 < std::ssize(diffs); ++r) record("fixed_point", nt(r + 1), nt(r + 2), diffs[r], diffs[r + 1]);
    for (int r = 0; r + 1 < grids; ++r) {
        const ConsistencyReport& c = levels[r].consistency;
        const ConsistencyReport& f = levels[r + 1].consistency;
        record("H1", nt(r), nt(r + 1), c.H1.sup, f.H1.sup);
        record("H2", nt(r), nt(r + 1), c.H2.sup, f.H2.sup);
        record("pde_u", nt(r), nt(r + 1), c.pde1.sup, f.pde1.sup, c.pde_roundoff, f.pde_roundoff);
        record("pde_v", nt(r), nt(r + 1), c.pde2.sup, f.pde2.sup, c.pde_roundoff, f.pde_roundoff);
    }

    write_json(out / "report.json", {{"schema_version", kSchemaVersion},
                                     {"command", "converge"},
                                     {"scenario", sc.name},
                                     {"runs", runs},
                                     {"orders", orders},
                                     {"min_order", kMinOrder},
                                     {"passed", all_passed}});
    log << "converge: " << grids << " grids, " << (all_passed ? "all orders >= 1.8" : "order below 1.8") << '\n';
    return all_passed ? 0 : kVerificationFailed;
}

int run_sweep_lambda(const RunConfig& config, std::ostream& log) {
    const ResolvedRun run = resolve_run(config);
    const fs::path out = prepare_out_dir(config.out_dir);
    const ScenarioConfig& sc = run.scenario;
    if (sc.sweep.points < 1) throw Error(ErrorKind::Usage, "config field 'sweep.points': must be >= 1");

    ScenarioData base = sc.data;
    base.lambda = 0.0;
    const ValidationReport v = validate_assumptions(sc.model, base);
    require_valid(v);
    const WindowChoice w = scenario_window(sc.model, base, v);

    std::vector<double> lambdas;
    for (int j = 0; j < sc.sweep.points; ++j)
        lambdas.push_back(sc.sweep.points == 1 ? 0.0 : sc.sweep.scale * w.lambda_cap * j / (sc.sweep.points - 1));
    for (double mult : sc.sweep.extra_multiples) lambdas.push_back(mult * w.lambda_cap);

    // Every run shares one delta and no halving, so only lambda varies.
    SolveSettings s = run.settings;
    s.delta = run.settings.delta.value_or(w.delta_theory);
    s.max_halvings = 0;

    CsvWriter csv(out / "kappa_sweep.csv", {"lambda", "kappa", "converged", "iterations"});
    json rows = json::array();
    int status = 0;
    for (double lambda : lambdas) {
        ScenarioData data = sc.data;
        data.lambda = lambda;
        const SolveOutcome o = solve_scenario(sc.model, data, s);
        csv.row(lambda, o.report.kappa, o.converged ? 1 : 0, o.report.iterations);
        rows.push_back({{"lambda", lambda},
                        {"lambda_over_cap", lambda / w.lambda_cap},
                        {"kappa", o.report.kappa},
                        {"converged", o.converged},
                        {"iterations", o.report.iterations},
                        {"message", o.converged ? std::string("ok") : o.failure_message}});
        log << "sweep-lambda: lambda = " << lambda << (o.converged ? " converged" : " failed") << ", kappa = "
            << o.report.kappa << '\n';
        if (lambda == 0.0 && !o.converged) status = failure_status(o);
    }
    write_json(out / "report.json", {{"schema_version", kSchemaVersion},
                                     {"command", "sweep-lambda"},
                                     {"scenario", sc.name},
                                     {"delta", *s.delta},
                                     {"window", to_json(w)},
                                     {"rows", rows}});
    return status;
}

int run(const RunConfig& config, std::ostream& log) {
    try {
        switch (config.command) {
        case Command::Solve: return run_solve(config, log);
        case Command::Crosscheck: return run_crosscheck(config, log);
        case Command::Converge: return run_converge(config, log);
        case Command::SweepLambda: return run_sweep_lambda(config, log);
        }
    } catch (const Error& e) {
        log << to_string(config.command) << ": " << to_string(e.kind()) << ": " << e.what() << '\n';
        return exit_code(e.kind());
    }
    return exit_code(ErrorKind::Usage);
}

}  // namespace vwave
