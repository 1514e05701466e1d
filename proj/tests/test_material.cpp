#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "vwave/errors.hpp"
#include "vwave/expression.hpp"
#include "vwave/material.hpp"
#include "vwave/scenario.hpp"

using namespace vwave;

TEST(Expression, ParsesAndDifferentiates) {
    const Expression e = Expression::parse("2 + sin(x)^2 - x/4", "x");
    const Jet j = e(0.7);
    EXPECT_NEAR(j.value(), 2 + std::pow(std::sin(0.7), 2) - 0.7 / 4, 1e-15);
    EXPECT_NEAR(j.derivative(1), 2 * std::sin(0.7) * std::cos(0.7) - 0.25, 1e-14);
    EXPECT_NEAR(j.derivative(2), 2 * std::cos(1.4), 1e-13);
}

TEST(Expression, PowerIsRightAssociativeAndUnaryMinusBinds) {
    EXPECT_DOUBLE_EQ(Expression::parse("2^3^2").value(0.0), 512.0);
    EXPECT_DOUBLE_EQ(Expression::parse("-x^2").value(3.0), -9.0);
    EXPECT_NEAR(Expression::parse("exp(log(x))*pi").value(2.0), 2 * std::numbers::pi, 1e-14);
}

TEST(Expression, RejectsMalformedText) {
    EXPECT_THROW(Expression::parse("1 + "), Error);
    EXPECT_THROW(Expression::parse("foo(x)"), Error);
    EXPECT_THROW(Expression::parse("u + 1", "x"), Error);
}

TEST(Validation, LinearPresetPasses) {
    const ValidationReport r = validate_assumptions(linear_material(), fixtures::trivial());
    EXPECT_TRUE(r.passed);
    EXPECT_DOUBLE_EQ(r.m0, 1.0);
    EXPECT_DOUBLE_EQ(r.psi0, 1.0);
}

TEST(Validation, NonDegenerateSpeedFails) {
    const MaterialModel m = custom_material("1 - u", "2 + sin(u)", {-10, 10});
    const ValidationReport r = validate_assumptions(m, fixtures::trivial());
    ASSERT_FALSE(r.passed);
    ASSERT_NE(r.first_failure(), nullptr);
    EXPECT_NE(r.first_failure()->detail.find("degeneracy condition violated"), std::string::npos);
    EXPECT_THROW(require_valid(r), Error);
}

TEST(Validation, TrigPresetSlopeBound) {
    const ValidationReport r = validate_assumptions(saxton_trig_material(1.0), fixtures::trivial());
    EXPECT_TRUE(r.passed);
    EXPECT_NEAR(r.m0, 0.5, 1e-12);
}

TEST(Validation, WrongSignFails) {
    const MaterialModel m = custom_material("u", "2", {-1, 1});
    EXPECT_FALSE(validate_assumptions(m, fixtures::trivial()).passed);
}

TEST(Validation, NonPositiveVelocityFails) {
    EXPECT_FALSE(validate_assumptions(linear_material(), fixtures::scenario("sin(x)", "0", "0")).passed);
}

TEST(Validation, DeclaredBoundsAreChecked) {
    MaterialModel m = linear_material();
    m.declared_m0 = 1.5;
    EXPECT_FALSE(validate_assumptions(m, fixtures::trivial()).passed);
    ScenarioData d = fixtures::trivial();
    d.declared_psi0 = 0.9;
    EXPECT_TRUE(validate_assumptions(linear_material(), d).passed);
}

TEST(Validation, YIndependenceFlag) {
    EXPECT_TRUE(validate_assumptions(linear_material(), fixtures::constant_data()).y_independent);
    EXPECT_FALSE(validate_assumptions(linear_material(), fixtures::y_dependent()).y_independent);
}

TEST(Boundary, TrivialScenarioHasNoSecondOrderData) {
    const BoundaryPoint b = derive_boundary(linear_material(), fixtures::trivial()).at(0.3);
    for (double v : {b.f11, b.f21, b.f22, b.g11, b.g21, b.g22}) EXPECT_EQ(v, 0.0);
}

TEST(Boundary, ConstantDataValues) {
    const BoundaryPoint b = derive_boundary(linear_material(), fixtures::constant_data()).at(0.3);
    EXPECT_NEAR(b.f11, 0.5, 1e-14);
    EXPECT_NEAR(b.g11, 0.5, 1e-14);
    EXPECT_NEAR(b.f21, -0.5, 1e-14);
    EXPECT_NEAR(b.f22, -0.5, 1e-14);
    EXPECT_NEAR(b.g21, -0.5, 1e-14);
    EXPECT_NEAR(b.g22, -0.5, 1e-14);
}

TEST(Boundary, SlopesMatchFiniteDifferences) {
    const DerivedBoundary d(linear_material(), fixtures::scenario("1 + 0.1*sin(x)", "0.5*cos(x)", "x^2/4"));
    const double y = 0.4, h = 1e-5;
    const BoundaryPoint s = d.slope_at(y), p = d.at(y + h), m = d.at(y - h);
    EXPECT_NEAR(s.g11, (p.g11 - m.g11) / (2 * h), 1e-8);
    EXPECT_NEAR(s.g21, (p.g21 - m.g21) / (2 * h), 1e-8);
    EXPECT_NEAR(d.at(y).dg22, (p.g22 - m.g22) / (2 * h), 1e-8);
}

TEST(Inversion, LinearAndDegenerateLine) {
    EXPECT_DOUBLE_EQ(invert_wave_speed(linear_material(), 0.0, 0.3), 0.3);
    EXPECT_EQ(invert_wave_speed(saxton_trig_material(), 0.0, 0.0), 0.0);
}

TEST(Inversion, TrigPresetClosedForm) {
    EXPECT_NEAR(invert_wave_speed(saxton_trig_material(1.0), 0.0, 0.25), std::asin(0.25), 1e-13);
    EXPECT_NEAR(std::asin(0.25), 0.2526803, 1e-7);
}

TEST(Inversion, AgreesWithBisection) {
    const MaterialModel m = custom_material("-u - u^3/3 + 0.2*u^2", "2 + cos(u)", {-1, 2});
    for (double tau : {1e-6, 0.01, 0.2, 0.7}) {
        double lo = 0.0, hi = 2.0;
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            (-m.c(mid) < tau ? lo : hi) = mid;
        }
        EXPECT_NEAR(invert_wave_speed(m, 0.0, tau), 0.5 * (lo + hi), 1e-10) << "tau = " << tau;
    }
}

TEST(Inversion, OutsideDomainIsWindowError) {
    try {
        invert_wave_speed(saxton_trig_material(), 0.0, 0.95);
        FAIL() << "expected an error";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::WindowExceeded);
    }
}

TEST(Tabulated, SplineReproducesSmoothData) {
    std::vector<double> x, v;
    for (int i = 0; i <= 40; ++i) {
        x.push_back(i * 0.05);
        v.push_back(1.0 + 0.1 * std::sin(x.back()));
    }
    const JetFunction f = tabulated_function(x, v);
    const Jet j = f(0.73);
    EXPECT_NEAR(j.value(), 1.0 + 0.1 * std::sin(0.73), 1e-9);
    EXPECT_NEAR(j.derivative(1), 0.1 * std::cos(0.73), 1e-7);
    EXPECT_THROW(f(2.5), Error);
}
