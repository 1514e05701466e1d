#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vwave/picard.hpp"
#include "vwave/reconstruction.hpp"

namespace vwave {

struct SolveSettings {
    int n_tau = 64;
    int n_y = 9;
    std::optional<double> delta;  // absent: theory window
    double tol = 1e-10;
    int max_iters = 200;
    double eps_dd = kDefaultEpsDD;
    int max_halvings = 5;
};

struct Attempt {
    double delta = 0.0;
    bool converged = false;
    int iterations = 0;
    double kappa = 0.0;
    std::string message;
};

/// Result of validate, window selection and the fixed-point solve with delta halving.
struct SolveOutcome {
    ValidationReport validation;
    ClassBounds bounds;
    WindowChoice window;
    double lambda = 0.0;
    double delta_requested = 0.0;
    double delta_used = 0.0;
    std::vector<Attempt> attempts;

    bool converged = false;
    std::optional<ErrorKind> failure;  // set when not converged
    std::string failure_message;

    std::optional<HodographProblem> problem;  // of the last attempt
    FieldQuartet field;
    IterationReport report;
};

/// Validation failures come back as failure = Validation without attempts. Contraction-type
/// failures (and a window leaving the material domain) halve delta up to max_halvings times.
SolveOutcome solve_scenario(const MaterialModel& model, const ScenarioData& data, const SolveSettings& settings);

/// Window constants for a scenario after validation; the lambda warning uses data.lambda.
WindowChoice scenario_window(const MaterialModel& model, const ScenarioData& data, const ValidationReport& v);

/// Invariant monitors of a converged run.
struct ClassMonitors {
    bool initial_line_zero = false;  // U_i(0, y) == 0 exactly
    double p2_max = 0.0;
    double M = 0.0;
    double p3_max = 0.0;
    double denominator_min = 0.0;
    double denominator_bound = 0.0;
    double jacobian_min = 0.0;
    double jacobian_bound = 0.0;
    bool passed() const {
        return initial_line_zero && p2_max <= M && denominator_min >= denominator_bound &&
               jacobian_min >= jacobian_bound;
    }
};

ClassMonitors class_monitors(const SolveOutcome& outcome, const ConsistencyReport& consistency);

/// Max |U - U_ode| over all levels of the reported columns; only for y-independent data.
double ode_reference_deviation(const MaterialModel& model, const ScenarioData& data, const HodographProblem& problem,
                               const FieldQuartet& field);

}  // namespace vwave
