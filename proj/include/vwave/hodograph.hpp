#pragma once

#include <array>

#include "vwave/material.hpp"
#include "vwave/scenario.hpp"

namespace vwave {

/// c', a, a' at u = phi1.
struct LineConstants {
    double c1 = 0.0;
    double a = 0.0;
    double a1 = 0.0;
};

LineConstants line_constants(const MaterialModel& model, double phi1);

/// Material state on one tau-level. u depends on tau only, so everything here is shared by the level.
struct LevelState {
    double tau = 0.0;
    double u = 0.0;
    double c1 = 0.0, c2 = 0.0;  // c'(u), c''(u)
    double a = 0.0, a1 = 0.0;   // a(u), a'(u)
    // Divided differences against the degenerate line.
    double dd_c1 = 0.0;   // (c'(u) - c'(phi1)) / tau
    double dd_a2 = 0.0;   // ((a^2)'(phi1) - (a^2)'(u)) / tau
    double dd_a1 = 0.0;   // (a'(u) - a'(phi1)) / tau
    double dd_ac1 = 0.0;  // (a c'(u) - a c'(phi1)) / tau
    bool series = false;  // divided differences taken from the Taylor expansion
};

inline constexpr double kDefaultEpsDD = 1e-4;

LevelState make_level(const MaterialModel& model, double phi1, double tau, double eps_dd = kDefaultEpsDD);

/// Divided differences from the expansion in tau only (used below eps_dd).
LevelState make_level_series(const MaterialModel& model, double phi1, double tau);
/// Divided differences as direct quotients (tau > 0).
LevelState make_level_direct(const MaterialModel& model, double phi1, double tau);

struct ClassBounds {
    double m0 = 1.0;
    double psi0 = 1.0;
};

/// Everything the source terms need at one point (tau, y) for one field value.
struct SourceContext {
    LevelState level;
    LineConstants line;
    BoundaryPoint b;
    std::array<double, 4> U{};
    double lambda = 0.0;
    ClassBounds bounds;

    double tau() const { return level.tau; }
    double y() const { return b.y; }
};

struct CharSpeeds {
    double plus = 0.0;
    double minus = 0.0;
};

using CoefficientMatrix = std::array<std::array<double, 4>, 4>;

/// The pieces of each right-hand side, kept apart for diagnostics.
struct SourceTerms {
    std::array<double, 4> leading{};  // (u_i - u_j) / 2 tau
    std::array<double, 4> chiral{};   // lambda-weighted difference quotients
    std::array<double, 4> quadratic{};
    CoefficientMatrix T{};
    std::array<double, 4> F{};
};

struct SourceValues {
    double lambda_plus = 0.0;
    double lambda_minus = 0.0;
    std::array<double, 4> rhs{};
};

CharSpeeds eval_lambda(const SourceContext& ctx);
CoefficientMatrix eval_coefficient_matrix(const SourceContext& ctx);
std::array<double, 4> eval_forcing(const SourceContext& ctx);
SourceTerms eval_terms(const SourceContext& ctx);
SourceValues eval_rhs(const SourceContext& ctx);

/// Right-hand side assembled from an already evaluated set of terms.
std::array<double, 4> assemble_rhs(const SourceTerms& terms, const std::array<double, 4>& U, double tau);

}  // namespace vwave
