#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vwave/errors.hpp"
#include "vwave/grid.hpp"
#include "vwave/hodograph.hpp"

namespace vwave {

enum class Family { Plus, Minus };

/// Everything fixed during one fixed-point solve: grid, level states, boundary table, constants.
class HodographProblem {
public:
    HodographProblem(const MaterialModel& model, const ScenarioData& data, ClassBounds bounds, HodographGrid grid,
                     double eps_dd = kDefaultEpsDD);

    const HodographGrid& grid() const { return grid_; }
    const LevelState& level(int k) const { return levels_[static_cast<std::size_t>(k)]; }
    const BoundaryTable& boundary() const { return table_; }
    const LineConstants& line() const { return line_; }
    ClassBounds bounds() const { return bounds_; }
    double lambda() const { return lambda_; }

    SourceContext context(int k, const BoundaryPoint& b, const std::array<double, 4>& U) const;

private:
    HodographGrid grid_;
    std::vector<LevelState> levels_;
    BoundaryTable table_;
    LineConstants line_;
    ClassBounds bounds_;
    double lambda_;
};

struct CharacteristicPath {
    double xi = 0.0;
    double eta = 0.0;
    Family family = Family::Plus;
    std::vector<double> y;  // y[l] at tau-level l, l = 0..k
    bool left_domain = false;
};

/// Backward Heun integration of dy/dtau = Lambda from (tau_k, y_m) down to tau = 0.
CharacteristicPath trace_characteristic(const HodographProblem& problem, const FieldQuartet& field, int k, int m,
                                        Family family);

struct StepDiagnostics {
    double min_denominator = 0.0;  // smallest |c'(U_i + g)| met along all paths
    int excluded_nodes = 0;        // buffer nodes whose paths left the sampled domain
};

/// One application of the integral map along characteristics, trapezoid rule in tau.
FieldQuartet picard_step(const HodographProblem& problem, const FieldQuartet& field,
                         StepDiagnostics* diagnostics = nullptr);

struct Distance {
    double value = 0.0;
    int k = 0;  // level and node of the largest component contribution
    int m = 0;
};

/// sum_j sup |f_j - g_j| / tau^2 over nodes with tau > 0.
Distance weighted_distance(const HodographGrid& grid, const FieldQuartet& f, const FieldQuartet& g);

struct IterationRecord {
    int iteration = 0;
    double distance = 0.0;
    double ratio = 0.0;  // d_n / d_{n-1}, 0 for the first iterate
    double p2_max = 0.0;
    double p3_max = 0.0;
    double min_denominator = 0.0;
    double argmax_tau = 0.0;
    double argmax_y = 0.0;
};

struct IterationReport {
    std::vector<IterationRecord> records;
    bool converged = false;
    int iterations = 0;
    double kappa = 0.0;             // median of the last three ratios
    double kappa_fit = 0.0;         // geometric fit over the last five distances
    double fit_log_residual = 0.0;      // max |ln d_n - fit| over the span of ln d_n in the window
    double fit_log_residual_abs = 0.0;  // max |ln d_n - fit|
    double p2_max = 0.0;
    double p3_max = 0.0;
    double min_denominator = 0.0;
    double denominator_bound = 0.0;  // m0 psi0 / 2
    double M = 0.0;
};

struct SolverOptions {
    double tol = 1e-10;
    int max_iters = 200;
    /// P2/P3 bound recorded in the report.
    double M = 64.0;
};

struct FixedPointResult {
    FieldQuartet field;
    IterationReport report;
};

/// Solver error that keeps the iteration history.
class SolverFailure : public Error {
public:
    SolverFailure(ErrorKind kind, const std::string& what, IterationReport report)
        : Error(kind, what), report_(std::move(report)) {}
    const IterationReport& report() const { return report_; }

private:
    IterationReport report_;
};

FixedPointResult solve_fixed_point(const HodographProblem& problem, const SolverOptions& options);

/// Sum over components of max |U_i| / tau^2 and of max |d_y U_i| / tau^2 on reported nodes.
double p2_ratio(const HodographGrid& grid, const FieldQuartet& f);
double p3_ratio(const HodographGrid& grid, const FieldQuartet& f);

/// Summary of the last ratios and the geometric fit.
void summarize_contraction(IterationReport& report);

struct WindowChoice {
    double K = 1.0;
    double M = 64.0;
    double lambda_cap = 1.0 / 32.0;
    double delta0 = 0.0;
    double delta_theory = 0.0;
    bool lambda_warning = false;
};

/// Constants seeding a run: K-proxy from sampled sup norms and the denominator margins, then
/// M = 64 K, lambda cap = 1 / (32 K), delta = min(1/M, delta0).
WindowChoice select_window(const MaterialModel& model, const ScenarioData& data, ClassBounds bounds);

/// Upper bound on |Lambda| over tau <= delta for fields in the class.
double speed_bound(double delta, ClassBounds bounds);

}  // namespace vwave
