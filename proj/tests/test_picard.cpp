#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "vwave/ode_reference.hpp"
#include "vwave/picard.hpp"

using namespace vwave;

namespace {

HodographProblem problem(const ScenarioData& d, double delta, int n_tau, int n_y = 9,
                         const MaterialModel& m = linear_material()) {
    const ValidationReport v = validate_assumptions(m, d);
    const ClassBounds b{v.m0, v.psi0};
    return HodographProblem(m, d, b, make_grid(delta, n_tau, d.y_range, n_y, speed_bound(delta, b)));
}

FieldQuartet zero_field(const HodographGrid& g) { return FieldQuartet(g.levels(), g.n_y); }

}  // namespace

TEST(Grid, LevelsAndBuffer) {
    const HodographGrid g = make_grid(0.1, 32, {0.0, 1.0}, 9, 0.3);
    EXPECT_EQ(g.tau(0), 0.0);
    EXPECT_DOUBLE_EQ(g.tau(32), 0.1);
    EXPECT_GE(g.shrink_margin(), 2 * 0.1 * 0.3);
    EXPECT_GE(g.buffer, 3);
    EXPECT_DOUBLE_EQ(g.y(g.first_reported()), 0.0);
    EXPECT_NEAR(g.y(g.last_reported()), 1.0, 1e-15);
}

TEST(Characteristics, ZeroFieldPathClosedForm) {
    const HodographProblem p = problem(fixtures::constant_data(), 0.1, 64);
    const HodographGrid& g = p.grid();
    const CharacteristicPath path = trace_characteristic(p, zero_field(g), g.n_tau, g.first_reported(), Family::Plus);
    ASSERT_EQ(path.y.size(), static_cast<std::size_t>(g.levels()));
    EXPECT_EQ(path.y.back(), 0.0);
    EXPECT_NEAR(path.y.front(), -(0.2 - 4.0 * std::log(1.05)), 1e-7);
    EXPECT_NEAR(path.y.front(), -0.0048393, 1e-7);
    EXPECT_FALSE(path.left_domain);
}

TEST(Characteristics, SingleStepBound) {
    const HodographProblem p = problem(fixtures::y_dependent(), 0.05, 16);
    const HodographGrid& g = p.grid();
    const int m = g.first_reported() + 3;
    const CharacteristicPath path = trace_characteristic(p, zero_field(g), 1, m, Family::Minus);
    ASSERT_EQ(path.y.size(), 2u);
    EXPECT_LE(std::abs(path.y[0] - g.y(m)), speed_bound(g.delta, p.bounds()) * g.h_tau());
}

TEST(Characteristics, IndependentOfLambda) {
    const HodographProblem a = problem(fixtures::y_dependent(0.0), 0.05, 16);
    const HodographProblem b = problem(fixtures::y_dependent(0.05), 0.05, 16);
    const FieldQuartet f = zero_field(a.grid());
    const int m = a.grid().first_reported() + 2;
    EXPECT_EQ(trace_characteristic(a, f, 16, m, Family::Plus).y, trace_characteristic(b, f, 16, m, Family::Plus).y);
}

TEST(Distance, MetricExamples) {
    const HodographGrid g = make_grid(0.1, 8, {0.0, 1.0}, 9, 0.2);
    FieldQuartet f = zero_field(g);
    const FieldQuartet z = zero_field(g);
    EXPECT_EQ(weighted_distance(g, f, f).value, 0.0);
    for (int k = 0; k < g.levels(); ++k)
        for (int m = 0; m < g.n_y; ++m) f(0, k, m) = g.tau(k) * g.tau(k);
    EXPECT_NEAR(weighted_distance(g, f, z).value, 1.0, 1e-14);
    for (int k = 0; k < g.levels(); ++k)
        for (int m = 0; m < g.n_y; ++m) f(1, k, m) = 2 * g.tau(k) * g.tau(k);
    EXPECT_NEAR(weighted_distance(g, f, z).value, 3.0, 1e-14);
}

TEST(PicardStep, TrivialScenarioZeroIsFixed) {
    const HodographProblem p = problem(fixtures::trivial(), 0.1, 16);
    const FieldQuartet out = picard_step(p, zero_field(p.grid()));
    for (int i = 0; i < 4; ++i)
        for (double v : out.component(i)) EXPECT_EQ(v, 0.0);
}

TEST(PicardStep, FirstIterateLeadingOrder) {
    const HodographProblem p = problem(fixtures::constant_data(), 0.01, 32);
    const HodographGrid& g = p.grid();
    const FieldQuartet out = picard_step(p, zero_field(g));
    for (int m = 0; m < g.n_y; ++m) EXPECT_EQ(out(0, 0, m), 0.0);
    for (int k = 1; k <= g.n_tau; ++k) {
        const double xi = g.tau(k);
        EXPECT_LE(std::abs(out(0, k, g.first_reported()) / (xi * xi) + 0.5), 1e-3) << "xi = " << xi;
    }
}

TEST(Solver, TrivialScenarioConvergesInOneIteration) {
    const HodographProblem p = problem(fixtures::trivial(), 0.1, 16);
    const FixedPointResult r = solve_fixed_point(p, {});
    EXPECT_TRUE(r.report.converged);
    EXPECT_EQ(r.report.iterations, 1);
    for (int i = 0; i < 4; ++i)
        for (double v : r.field.component(i)) EXPECT_EQ(v, 0.0);
}

TEST(Solver, ConstantDataMatchesOdeReference) {
    const ScenarioData d = fixtures::constant_data();
    const HodographProblem p = problem(d, 0.1, 64);
    const HodographGrid& g = p.grid();
    const FixedPointResult r = solve_fixed_point(p, {1e-10, 200, 192.0});
    ASSERT_TRUE(r.report.converged);
    EXPECT_LT(r.report.kappa, 1.0);
    std::vector<double> taus;
    for (int k = 0; k < g.levels(); ++k) taus.push_back(g.tau(k));
    const auto ref = y_independent_reference(linear_material(), d, taus);
    double dev = 0.0;
    for (int k = 0; k < g.levels(); ++k)
        for (int i = 0; i < 4; ++i) dev = std::max(dev, std::abs(r.field(i, k, g.first_reported()) - ref[k][i]));
    EXPECT_LT(dev, 1e-6);
}

TEST(Solver, ConvergedRunStaysInClass) {
    const HodographProblem p = problem(fixtures::y_dependent(), 0.05, 16);
    const FixedPointResult r = solve_fixed_point(p, {1e-10, 200, 192.0});
    ASSERT_TRUE(r.report.converged);
    for (int i = 0; i < 4; ++i)
        for (int m = 0; m < p.grid().n_y; ++m) EXPECT_EQ(r.field(i, 0, m), 0.0);
    EXPECT_LE(r.report.p2_max, r.report.M);
    EXPECT_GE(r.report.min_denominator, r.report.denominator_bound);
    EXPECT_EQ(r.report.records.size(), static_cast<std::size_t>(r.report.iterations));
}

TEST(Solver, IterationBudgetIsContractionFailure) {
    const HodographProblem p = problem(fixtures::y_dependent(), 0.05, 16);
    try {
        solve_fixed_point(p, {1e-14, 2, 192.0});
        FAIL() << "expected a failure";
    } catch (const SolverFailure& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Contraction);
        EXPECT_NE(std::string(e.what()).find("contraction failure"), std::string::npos);
        EXPECT_EQ(e.report().iterations, 2);
    }
}

TEST(Window, ConstantsFollowTheProxy) {
    for (const MaterialModel& m : {linear_material(), saxton_trig_material(), custom_material("-u", "1", {-10, 10})}) {
        const ValidationReport v = validate_assumptions(m, fixtures::constant_data());
        ASSERT_TRUE(v.passed);
        const WindowChoice w = select_window(m, fixtures::constant_data(), {v.m0, v.psi0});
        EXPECT_GE(w.K, 1.0);
        EXPECT_DOUBLE_EQ(w.M, 64.0 * w.K);
        EXPECT_DOUBLE_EQ(w.lambda_cap, 1.0 / (32.0 * w.K));
        EXPECT_LE(w.delta_theory, 1.0 / w.M);
        EXPECT_LE(w.delta_theory, w.delta0);
    }
}

TEST(Window, ProxyScaling) {
    const MaterialModel m = custom_material("-u", "1", {-10, 10});
    const WindowChoice w = select_window(m, fixtures::scenario("1", "0", "0"), {1.0, 1.0});
    EXPECT_DOUBLE_EQ(w.K, 2.0);
    EXPECT_DOUBLE_EQ(w.M, 128.0);
    EXPECT_DOUBLE_EQ(w.lambda_cap, 1.0 / 64.0);
}

TEST(Window, LambdaWarning) {
    const MaterialModel m = linear_material();
    EXPECT_FALSE(select_window(m, fixtures::constant_data(0.0), {1.0, 1.0}).lambda_warning);
    EXPECT_TRUE(select_window(m, fixtures::constant_data(1.0), {1.0, 1.0}).lambda_warning);
}

TEST(Contraction, SummaryOfGeometricSequence) {
    IterationReport r;
    for (int n = 1; n <= 8; ++n) r.records.push_back({n, std::pow(0.3, n), n > 1 ? 0.3 : 0.0});
    summarize_contraction(r);
    EXPECT_NEAR(r.kappa, 0.3, 1e-14);
    EXPECT_NEAR(r.kappa_fit, 0.3, 1e-12);
    EXPECT_LT(r.fit_log_residual, 1e-12);
}
