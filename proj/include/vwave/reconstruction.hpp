#pragma once

#include <array>
#include <vector>

#include "vwave/picard.hpp"

namespace vwave {

/// Riemann invariants R1, S1, R2, S2 on every grid node (level-major, all y nodes).
struct Invariants {
    int levels = 0;
    int n_y = 0;
    std::array<std::vector<double>, 4> values;  // R1, S1, R2, S2

    double operator()(int i, int k, int m) const { return values[i][static_cast<std::size_t>(k) * n_y + m]; }
};

Invariants recover_invariants(const HodographProblem& problem, const FieldQuartet& field);

/// t(tau, y) by trapezoid integration of dt/dtau = -2 / (c'(u) (R1 + S1)), plus the Jacobian on every node.
struct TimeMap {
    std::vector<double> t;  // level-major
    std::vector<double> J;  // -c'(u) (R1 + S1) / 2
    double min_jacobian = 0.0;
};

TimeMap compute_time_map(const HodographProblem& problem, const Invariants& inv);

/// u on each level and v(tau, y) by trapezoid integration of v_tau = -(R2 + S2) / (c' (R1 + S1)).
struct AngleFields {
    std::vector<double> u;       // per level
    std::vector<double> v;       // level-major
    std::vector<double> v_tau;   // level-major
};

AngleFields compute_u_and_v(const HodographProblem& problem, const Invariants& inv);

struct PhysicalNode {
    double tau = 0.0;
    double t = 0.0, x = 0.0, u = 0.0, v = 0.0;
    double R1 = 0.0, S1 = 0.0, R2 = 0.0, S2 = 0.0;
    double J = 0.0;
    double H1 = 0.0, H2 = 0.0;
};

struct ResidualNorms {
    double sup = 0.0;
    double l2 = 0.0;
};

struct ConsistencyReport {
    ResidualNorms H1, H2;             // levels from 3 on
    ResidualNorms H1_early, H2_early;  // levels 1 and 2
    ResidualNorms pde1, pde2;         // both equations on the interior lattice
    double pde_roundoff = 0.0;        // rounding level of the second differences on that lattice
    double roundtrip_max = 0.0;       // |tau(t, x) + c(u)| at the nodes
    double initial_data_max = 0.0;    // deviation of u, u_t, v, v_t from the data at t = 0
    double min_jacobian = 0.0;
    double jacobian_bound = 0.0;
    double t_end = 0.0;               // top of the rectangular lattice
    int lattice_rows = 0;
    int lattice_cols = 0;
};

/// Physical solution on the reported nodes (level-major over reported columns).
struct PhysicalSolution {
    int levels = 0;
    int columns = 0;
    std::vector<PhysicalNode> nodes;
    const PhysicalNode& at(int k, int c) const { return nodes[static_cast<std::size_t>(k) * columns + c]; }
};

struct Reconstruction {
    PhysicalSolution solution;
    ConsistencyReport report;
};

/// Full pass: invariants, time map, angles, H residuals by physical-plane differences, and the
/// residuals of the original second-order system on a rectangular (t, x) lattice.
Reconstruction reconstruct(const HodographProblem& problem, const MaterialModel& model, const ScenarioData& data,
                           const FieldQuartet& field);

}  // namespace vwave
