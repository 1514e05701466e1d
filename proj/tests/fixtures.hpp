#pragma once

#include <string>

#include "vwave/expression.hpp"
#include "vwave/material.hpp"
#include "vwave/scenario.hpp"

namespace fixtures {

inline vwave::JetFunction fn(const std::string& text) { return vwave::Expression::parse(text, "x").as_function(); }

inline vwave::ScenarioData scenario(const std::string& psi1, const std::string& psi2, const std::string& phi2,
                                    double lambda = 0.0, vwave::Interval y_range = {0.0, 1.0}) {
    vwave::ScenarioData d;
    d.name = "test";
    d.phi1 = 0.0;
    d.psi1 = fn(psi1);
    d.psi2 = fn(psi2);
    d.phi2 = fn(phi2);
    d.lambda = lambda;
    d.y_range = y_range;
    return d;
}

/// psi1 = 1, psi2 = 1/2, phi2 = 0.
inline vwave::ScenarioData constant_data(double lambda = 0.0) { return scenario("1", "0.5", "0", lambda); }

/// psi1 = 1, psi2 = 0, phi2 = 0: zero is an exact fixed point.
inline vwave::ScenarioData trivial() { return scenario("1", "0", "0"); }

inline vwave::ScenarioData y_dependent(double lambda = 0.0) {
    return scenario("1 + 0.1*sin(x)", "0.5", "0", lambda, {0.0, 2.0});
}

}  // namespace fixtures
