#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vwave/material.hpp"
#include "vwave/scenario.hpp"

namespace vwave {

inline constexpr int kSchemaVersion = 1;

struct GridSettings {
    int n_tau = 64;
    int n_y = 9;
    std::optional<double> delta;  // absent: use the theory window
};

struct SolverSettings {
    double tol = 1e-10;
    int max_iters = 200;
    double eps_dd = 1e-4;
    int max_halvings = 5;
};

struct ConvergeSettings {
    int grids = 3;
};

struct SweepSettings {
    double scale = 1.0;                  // lambda grid spans [0, scale * lambda_cap]
    int points = 3;
    std::vector<double> extra_multiples;  // additional lambda values as multiples of the cap
};

struct CrosscheckSettings {
    int points = 100;
    std::uint64_t seed = 20240611;
};

/// A scenario file: material, initial data and run parameters.
struct ScenarioConfig {
    std::string name;
    MaterialModel model;
    ScenarioData data;
    /// lambda given as a multiple of the cap; resolved once the window is known.
    std::optional<double> lambda_cap_multiple;
    GridSettings grid;
    SolverSettings solver;
    ConvergeSettings converge;
    SweepSettings sweep;
    CrosscheckSettings crosscheck;
};

/// Parses the JSON scenario text; schema violations raise usage errors naming the field.
ScenarioConfig parse_scenario_config(const std::string& text);
ScenarioConfig load_scenario_config(const std::string& path);

}  // namespace vwave
