#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "vwave/reconstruction.hpp"

using namespace vwave;

namespace {

struct Solved {
    MaterialModel model;
    ScenarioData data;
    HodographProblem problem;
    FieldQuartet field;
};

Solved solve(const ScenarioData& d, double delta, int n_tau, int n_y = 9) {
    const MaterialModel m = linear_material();
    const ValidationReport v = validate_assumptions(m, d);
    const ClassBounds b{v.m0, v.psi0};
    HodographProblem p(m, d, b, make_grid(delta, n_tau, d.y_range, n_y, speed_bound(delta, b)));
    FixedPointResult r = solve_fixed_point(p, {1e-12, 200, 192.0});
    return {m, d, std::move(p), std::move(r.field)};
}

}  // namespace

TEST(Invariants, DegenerateLineValues) {
    const Solved s = solve(fixtures::y_dependent(), 0.05, 16);
    const Invariants inv = recover_invariants(s.problem, s.field);
    const HodographGrid& g = s.problem.grid();
    for (int m = 0; m < g.n_y; ++m) {
        const double psi1 = 1 + 0.1 * std::sin(g.y(m));
        EXPECT_NEAR(inv(0, 0, m), psi1, 1e-14);
        EXPECT_EQ(inv(0, 0, m), inv(1, 0, m));
        EXPECT_NEAR(inv(2, 0, m), 0.5, 1e-14);
        EXPECT_EQ(inv(2, 0, m), inv(3, 0, m));
    }
}

TEST(Invariants, TrivialAndConstantData) {
    const Solved t = solve(fixtures::trivial(), 0.1, 16);
    const Invariants ti = recover_invariants(t.problem, t.field);
    for (int k = 0; k < t.problem.grid().levels(); ++k) {
        EXPECT_EQ(ti(0, k, 4), 1.0);
        EXPECT_EQ(ti(1, k, 4), 1.0);
    }
    const Solved c = solve(fixtures::constant_data(), 0.1, 16);
    const Invariants ci = recover_invariants(c.problem, c.field);
    EXPECT_NEAR(ci(0, 16, 5), c.field(0, 16, 5) + 1.0 + 0.05, 1e-14);
}

TEST(TimeMap, TrivialScenarioIsIdentity) {
    const Solved s = solve(fixtures::trivial(), 0.1, 16);
    const TimeMap tm = compute_time_map(s.problem, recover_invariants(s.problem, s.field));
    const HodographGrid& g = s.problem.grid();
    for (int k = 0; k < g.levels(); ++k) EXPECT_NEAR(tm.t[static_cast<std::size_t>(k) * g.n_y + 3], g.tau(k), 1e-15);
}

TEST(TimeMap, ConstantDataLeadingOrder) {
    const Solved s = solve(fixtures::constant_data(), 0.1, 64);
    const TimeMap tm = compute_time_map(s.problem, recover_invariants(s.problem, s.field));
    const HodographGrid& g = s.problem.grid();
    EXPECT_GE(tm.min_jacobian, 0.5);
    double prev = -1.0;
    for (int k = 0; k < g.levels(); ++k) {
        const double tau = g.tau(k), t = tm.t[static_cast<std::size_t>(k) * g.n_y + 4];
        EXPECT_GT(t, prev);
        prev = t;
        EXPECT_LE(std::abs(t - (tau - tau * tau / 4)), tau * tau * tau) << "tau = " << tau;
    }
    EXPECT_EQ(tm.t[4], 0.0);
}

TEST(Angles, LinearSpeedAndVelocityLimits) {
    const Solved t = solve(fixtures::trivial(), 0.1, 16);
    const AngleFields ta = compute_u_and_v(t.problem, recover_invariants(t.problem, t.field));
    for (int k = 0; k <= 16; ++k) EXPECT_NEAR(ta.u[k], t.problem.grid().tau(k), 1e-15);
    for (double v : ta.v) EXPECT_EQ(v, 0.0);

    const Solved c = solve(fixtures::constant_data(), 0.1, 64);
    const AngleFields ca = compute_u_and_v(c.problem, recover_invariants(c.problem, c.field));
    const HodographGrid& g = c.problem.grid();
    for (int k = 0; k < g.levels(); ++k) {
        const double tau = g.tau(k);
        EXPECT_LE(std::abs(ca.v[static_cast<std::size_t>(k) * g.n_y + 4] - 0.5 * tau), tau * tau);
    }
}

TEST(Reconstruct, TrivialScenarioIsExact) {
    const Solved s = solve(fixtures::trivial(), 0.1, 32);
    const Reconstruction r = reconstruct(s.problem, s.model, s.data, s.field);
    for (const PhysicalNode& n : r.solution.nodes) {
        EXPECT_NEAR(n.u, n.t, 1e-12);
        EXPECT_EQ(n.v, 0.0);
        EXPECT_EQ(n.H1, 0.0);
        EXPECT_EQ(n.H2, 0.0);
    }
    EXPECT_LE(r.report.pde1.sup, std::max(1e-12, r.report.pde_roundoff));
    EXPECT_EQ(r.report.pde2.sup, 0.0);
}

TEST(Reconstruct, ResidualsShrinkUnderRefinement) {
    const Solved a = solve(fixtures::y_dependent(), 0.05, 16, 9);
    const Solved b = solve(fixtures::y_dependent(), 0.05, 32, 17);
    const ConsistencyReport ra = reconstruct(a.problem, a.model, a.data, a.field).report;
    const ConsistencyReport rb = reconstruct(b.problem, b.model, b.data, b.field).report;
    EXPECT_GT(ra.H1.sup / rb.H1.sup, 3.5);
    EXPECT_GT(ra.pde1.sup / rb.pde1.sup, 3.5);
    EXPECT_GT(ra.pde2.sup / rb.pde2.sup, 3.5);
    EXPECT_GE(rb.min_jacobian, rb.jacobian_bound);
    EXPECT_LT(rb.initial_data_max, 1e-12);
}
