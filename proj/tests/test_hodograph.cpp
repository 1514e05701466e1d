#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "vwave/errors.hpp"
#include "vwave/hodograph.hpp"
#include "vwave/substitution.hpp"

using namespace vwave;

namespace {

SourceContext context(const MaterialModel& m, const ScenarioData& d, double tau, std::array<double, 4> U = {},
                      double y = 0.2) {
    return SourceContext{make_level(m, d.phi1, tau), line_constants(m, d.phi1), derive_boundary(m, d).at(y), U,
                         d.lambda, ClassBounds{1.0, 1.0}};
}

}  // namespace

TEST(CharSpeeds, VanishOnDegenerateLine) {
    const CharSpeeds s = eval_lambda(context(linear_material(), fixtures::constant_data(), 0.0));
    EXPECT_EQ(s.plus, 0.0);
    EXPECT_EQ(s.minus, 0.0);
}

TEST(CharSpeeds, ConstantDataValues) {
    const auto m = linear_material();
    const auto d = fixtures::constant_data();
    EXPECT_NEAR(eval_lambda(context(m, d, 0.1)).plus, 0.1 / 1.05, 1e-14);
    EXPECT_NEAR(eval_lambda(context(m, d, 0.1)).plus, 0.0952381, 1e-7);
    EXPECT_NEAR(eval_lambda(context(m, d, 0.1, {0, 0.01, 0, 0})).plus, 0.0943396, 1e-7);
    EXPECT_NEAR(eval_lambda(context(m, d, 0.1)).minus, -0.1 / 1.05, 1e-14);
}

TEST(Coefficients, DiagonalVelocityEntriesVanish) {
    const auto m = saxton_trig_material();
    const auto d = fixtures::scenario("1 + 0.2*cos(x)", "0.3*sin(x)", "x/2", 0.01);
    for (double tau : {0.0, 1e-3, 0.05}) {
        const CoefficientMatrix T = eval_coefficient_matrix(context(m, d, tau, {1e-4, -2e-4, 3e-4, 1e-4}));
        EXPECT_EQ(T[0][0], 0.0);
        EXPECT_EQ(T[1][1], 0.0);
    }
}

TEST(Coefficients, TrivialScenarioCouplingsVanish) {
    const CoefficientMatrix T = eval_coefficient_matrix(context(linear_material(), fixtures::trivial(), 0.05));
    EXPECT_EQ(T[0][1], 0.0);
    EXPECT_EQ(T[1][0], 0.0);
}

TEST(Coefficients, T33OnDegenerateLine) {
    const CoefficientMatrix T = eval_coefficient_matrix(context(linear_material(), fixtures::constant_data(), 0.0));
    EXPECT_NEAR(T[2][2], -0.5, 1e-14);
}

TEST(Forcing, F1OnDegenerateLine) {
    EXPECT_NEAR(eval_forcing(context(linear_material(), fixtures::constant_data(), 0.0))[0], -1.0, 1e-14);
}

TEST(Forcing, TrivialScenarioVelocityForcingVanishes) {
    const auto F = eval_forcing(context(linear_material(), fixtures::trivial(), 0.07));
    EXPECT_EQ(F[2], 0.0);
    EXPECT_EQ(F[3], 0.0);
}

TEST(DividedDifferences, LinearSpeedHasNone) {
    const auto m = linear_material();
    for (double tau : {0.0, 1e-6, 1e-3, 0.5}) EXPECT_EQ(make_level(m, 0.0, tau).dd_c1, 0.0);
}

TEST(DividedDifferences, SeriesMatchesQuotientsNearCrossover) {
    const auto m = saxton_trig_material(1.0, 2.0);
    for (double tau = 0.5 * kDefaultEpsDD; tau <= 2.0 * kDefaultEpsDD; tau += 0.25 * kDefaultEpsDD) {
        const LevelState s = make_level_series(m, 0.0, tau), q = make_level_direct(m, 0.0, tau);
        EXPECT_NEAR(s.dd_c1, q.dd_c1, 1e-8);
        EXPECT_NEAR(s.dd_a1, q.dd_a1, 1e-8);
        EXPECT_NEAR(s.dd_a2, q.dd_a2, 1e-8);
        EXPECT_NEAR(s.dd_ac1, q.dd_ac1, 1e-8);
    }
}

TEST(Rhs, VanishesOnDegenerateLine) {
    for (double v : eval_rhs(context(saxton_trig_material(), fixtures::y_dependent(), 0.0)).rhs) EXPECT_EQ(v, 0.0);
}

TEST(Rhs, OnlyForcingSurvivesForZeroField) {
    const SourceContext ctx = context(linear_material(), fixtures::constant_data(), 0.1);
    EXPECT_NEAR(eval_rhs(ctx).rhs[0], eval_forcing(ctx)[0] * 0.1, 1e-15);
}

TEST(Rhs, LeadingTermIsHalfTheQuotient) {
    const double tau = 0.02;
    const SourceTerms t = eval_terms(context(linear_material(), fixtures::trivial(), tau, {tau * tau, 0, 0, 0}));
    EXPECT_NEAR(t.leading[0], tau / 2, 1e-15);
}

TEST(Rhs, SingularitiesCancel) {
    // |rhs| / tau stays bounded as tau -> 0 for fields inside the class.
    const auto m = saxton_trig_material();
    const auto d = fixtures::scenario("1 + 0.1*sin(x)", "0.4 + 0.1*cos(x)", "0.3*x", 0.02);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    double worst = 0.0;
    for (double tau = 1e-6; tau <= 0.05; tau *= 1.5) {
        std::array<double, 4> U;
        for (double& u : U) u = unit(rng) * tau * tau;
        for (double v : eval_rhs(context(m, d, tau, U, 0.7)).rhs) worst = std::max(worst, std::abs(v) / tau);
    }
    EXPECT_LT(worst, 50.0);
}

TEST(Rhs, AgreesWithDirectSubstitution) {
    const auto m = saxton_trig_material();
    const auto d = fixtures::scenario("1 + 0.1*sin(x)", "0.4 + 0.1*cos(x)", "0.3*x", 0.02);
    for (double tau : {1e-3, 0.01, 0.04}) {
        const SourceContext ctx = context(m, d, tau, {0.3 * tau * tau, -0.2 * tau * tau, 0.1 * tau * tau, 0.0}, 0.4);
        const auto rhs = eval_rhs(ctx).rhs;
        const auto direct = direct_substitution_rhs(ctx);
        for (int i = 0; i < 4; ++i) EXPECT_NEAR(rhs[i], direct[i], 1e-9 * std::max(1.0, std::abs(direct[i])));
    }
}

TEST(Rhs, ClassBreachIsHardError) {
    // U2 = -g drives the characteristic denominator to zero.
    const SourceContext ctx = context(linear_material(), fixtures::constant_data(), 0.05, {0, -0.9, 0, 0});
    try {
        eval_rhs(ctx);
        FAIL() << "expected a class-membership breach";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ClassBreach);
        EXPECT_NE(std::string(e.what()).find("class-membership breach"), std::string::npos);
    }
}
