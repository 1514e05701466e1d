#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vwave/jet.hpp"
#include "vwave/material.hpp"

namespace vwave {

/// Initial data on the degenerate line t = 0: u = phi1, u_t = psi1, v = phi2, v_t = psi2.
struct ScenarioData {
    std::string name = "scenario";
    double phi1 = 0.0;
    JetFunction phi2;
    JetFunction psi1;
    JetFunction psi2;
    double lambda = 0.0;
    Interval y_range{0.0, 1.0};
    std::optional<double> declared_psi0;
    /// Data came from tables; derivatives are spline derivatives.
    bool tabulated = false;
};

struct AssumptionCheck {
    std::string name;
    bool passed = true;
    double worst = 0.0;
    double bound = 0.0;
    std::string detail;
};

struct ValidationReport {
    std::vector<AssumptionCheck> checks;
    bool passed = true;
    double m0 = 0.0;
    double psi0 = 0.0;
    /// True when psi1, psi2 are constant and phi2 is affine, so every field is y-independent.
    bool y_independent = false;

    const AssumptionCheck* first_failure() const;
};

ValidationReport validate_assumptions(const MaterialModel& model, const ScenarioData& data, int samples = 1001);

/// Throws a validation error naming the first failed check.
void require_valid(const ValidationReport& report);

/// Boundary quantities at one y: data, second-order data f_ij, their tau-scaled forms g_ij, and y-derivatives.
struct BoundaryPoint {
    double y = 0.0;
    double psi1 = 0.0, dpsi1 = 0.0;
    double psi2 = 0.0, dpsi2 = 0.0;
    double phi2 = 0.0, dphi2 = 0.0, ddphi2 = 0.0;
    double f11 = 0.0, f21 = 0.0, f22 = 0.0;
    double g11 = 0.0, g21 = 0.0, g22 = 0.0;
    double dg11 = 0.0, dg21 = 0.0, dg22 = 0.0;

    double g(double tau) const { return psi1 + g11 * tau; }
};

class DerivedBoundary {
public:
    DerivedBoundary(const MaterialModel& model, const ScenarioData& data);

    BoundaryPoint at(double y) const;
    /// y-derivative of every field of at(y).
    BoundaryPoint slope_at(double y) const;
    double g(double tau, double y) const { return at(y).g(tau); }

    double phi1() const { return phi1_; }
    double lambda() const { return lambda_; }
    /// c', a, a' at phi1.
    double c1_line() const { return c1_; }
    double a_line() const { return a0_; }
    double a1_line() const { return a1_; }

private:
    struct Channels;
    Channels channels(double y) const;

    JetFunction phi2_, psi1_, psi2_;
    double phi1_, lambda_, c1_, a0_, a1_;
};

DerivedBoundary derive_boundary(const MaterialModel& model, const ScenarioData& data);

/// Solves c(u) = -tau on the branch starting at phi1.
double invert_wave_speed(const MaterialModel& model, double phi1, double tau);

/// Quintic interpolating spline through (x_i, v_i); derivatives up to fourth order.
JetFunction tabulated_function(const std::vector<double>& x, const std::vector<double>& v);

}  // namespace vwave
