#include "vwave/pipeline.hpp"

#include <cmath>

#include "vwave/ode_reference.hpp"

namespace vwave {

namespace {

bool halving_helps(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Contraction:
    case ErrorKind::ClassBreach:
    case ErrorKind::DomainOfDependence:
    case ErrorKind::SourceAssembly:
    case ErrorKind::WindowExceeded:
        return true;
    default:
        return false;
    }
}

}  // namespace

WindowChoice scenario_window(const MaterialModel& model, const ScenarioData& data, const ValidationReport& v) {
    return select_window(model, data, ClassBounds{v.m0, v.psi0});
}

SolveOutcome solve_scenario(const MaterialModel& model, const ScenarioData& data, const SolveSettings& settings) {
    SolveOutcome out;
    out.validation = validate_assumptions(model, data);
    out.lambda = data.lambda;
    if (!out.validation.passed) {
        const AssumptionCheck* f = out.validation.first_failure();
        out.failure = ErrorKind::Validation;
        out.failure_message = f ? f->detail : "assumption check failed";
        return out;
    }
    out.bounds = ClassBounds{out.validation.m0, out.validation.psi0};
    out.window = scenario_window(model, data, out.validation);
    out.delta_requested = settings.delta.value_or(out.window.delta_theory);

    SolverOptions opts{settings.tol, settings.max_iters, out.window.M};
    double delta = out.delta_requested;
    for (int attempt = 0; attempt <= settings.max_halvings; ++attempt, delta *= 0.5) {
        Attempt rec;
        rec.delta = delta;
        try {
            const HodographGrid grid =
                make_grid(delta, settings.n_tau, data.y_range, settings.n_y, speed_bound(delta, out.bounds));
            out.problem.emplace(model, data, out.bounds, grid, settings.eps_dd);
            FixedPointResult res = solve_fixed_point(*out.problem, opts);
            rec.converged = true;
            rec.iterations = res.report.iterations;
            rec.kappa = res.report.kappa;
            out.attempts.push_back(rec);
            out.converged = true;
            out.failure.reset();
            out.delta_used = delta;
            out.field = std::move(res.field);
            out.report = std::move(res.report);
            return out;
        } catch (const SolverFailure& e) {
            rec.iterations = e.report().iterations;
            rec.kappa = e.report().kappa;
            rec.message = e.what();
            out.report = e.report();
            out.failure = e.kind();
            out.failure_message = e.what();
        } catch (const Error& e) {
            rec.message = e.what();
            out.report = IterationReport{};
            out.failure = e.kind();
            out.failure_message = e.what();
        }
        out.attempts.push_back(rec);
        out.delta_used = delta;
        if (!halving_helps(*out.failure)) return out;
    }
    out.failure = ErrorKind::Contraction;
    out.failure_message = "contraction failure: no convergence after " + std::to_string(settings.max_halvings) +
                          " delta halvings (last attempt: " + out.failure_message + ")";
    return out;
}

ClassMonitors class_monitors(const SolveOutcome& outcome, const ConsistencyReport& consistency) {
    ClassMonitors mon;
    const HodographGrid& g = outcome.problem->grid();
    mon.initial_line_zero = true;
    for (int i = 0; i < 4; ++i)
        for (int m = 0; m < g.n_y; ++m)
            if (outcome.field(i, 0, m) != 0.0) mon.initial_line_zero = false;
    mon.p2_max = outcome.report.p2_max;
    mon.M = outcome.report.M;
    mon.p3_max = outcome.report.p3_max;
    mon.denominator_min = outcome.report.min_denominator;
    mon.denominator_bound = outcome.report.denominator_bound;
    mon.jacobian_min = consistency.min_jacobian;
    mon.jacobian_bound = consistency.jacobian_bound;
    return mon;
}

double ode_reference_deviation(const MaterialModel& model, const ScenarioData& data, const HodographProblem& problem,
                               const FieldQuartet& field) {
    const HodographGrid& g = problem.grid();
    std::vector<double> taus;
    for (int k = 0; k < g.levels(); ++k) taus.push_back(g.tau(k));
    const auto ref = y_independent_reference(model, data, taus);
    double dev = 0.0;
    for (int k = 0; k < g.levels(); ++k)
        for (int m = g.first_reported(); m <= g.last_reported(); ++m)
            for (int i = 0; i < 4; ++i) dev = std::max(dev, std::abs(field(i, k, m) - ref[k][i]));
    return dev;
}

}  // namespace vwave
