#pragma once

#include <array>
#include <vector>

#include "vwave/material.hpp"
#include "vwave/scenario.hpp"

namespace vwave {

/// Uniform (tau, y) grid: levels tau_k = k delta / n_tau, y nodes covering the reported range plus a buffer.
struct HodographGrid {
    double delta = 0.0;
    int n_tau = 0;
    Interval y_range;  // reported range
    double y0 = 0.0;   // first (buffer) node
    double h_y = 0.0;
    int n_y = 0;       // total nodes including buffer
    int buffer = 0;    // buffer nodes on each side

    int levels() const { return n_tau + 1; }
    double h_tau() const { return delta / n_tau; }
    double tau(int k) const { return delta * k / n_tau; }
    double y(int m) const { return y0 + h_y * m; }
    bool reported(int m) const { return m >= buffer && m < n_y - buffer; }
    int first_reported() const { return buffer; }
    int last_reported() const { return n_y - buffer - 1; }
    double shrink_margin() const { return buffer * h_y; }
    double y_first() const { return y0; }
    double y_last() const { return y(n_y - 1); }
};

/// n_y_reported nodes span y_range; the buffer is at least 2 delta max_speed wide and three cells.
HodographGrid make_grid(double delta, int n_tau, Interval y_range, int n_y_reported, double max_speed);

bool same_grid(const HodographGrid& a, const HodographGrid& b);

/// U1..U4 on the grid, one array per component, level-major.
class FieldQuartet {
public:
    FieldQuartet() = default;
    FieldQuartet(int levels, int n_y);

    int levels() const { return levels_; }
    int n_y() const { return n_y_; }
    double& operator()(int i, int k, int m) { return values_[i][idx(k, m)]; }
    double operator()(int i, int k, int m) const { return values_[i][idx(k, m)]; }
    std::array<double, 4> at(int k, int m) const;
    const std::vector<double>& component(int i) const { return values_[i]; }
    /// Interpolation order in y used when reading between nodes.
    static constexpr int kInterpolationOrder = 3;

private:
    std::size_t idx(int k, int m) const { return static_cast<std::size_t>(k) * n_y_ + m; }
    int levels_ = 0;
    int n_y_ = 0;
    std::array<std::vector<double>, 4> values_;
};

/// Four-point Lagrange weights on the stencil starting at `first` (stencil clamped into the grid).
struct CubicStencil {
    int first = 0;
    std::array<double, 4> w{};
};
CubicStencil cubic_stencil(const HodographGrid& grid, double y);

std::array<double, 4> interpolate(const FieldQuartet& f, const CubicStencil& s, int k);
double interpolate_component(const FieldQuartet& f, const CubicStencil& s, int i, int k);

/// Boundary quantities sampled at the y nodes, read between nodes by cubic Hermite interpolation.
class BoundaryTable {
public:
    BoundaryTable(const DerivedBoundary& boundary, const HodographGrid& grid);

    const BoundaryPoint& node(int m) const { return values_[static_cast<std::size_t>(m)]; }
    BoundaryPoint at(double y) const;
    /// psi1 + g11 tau at y.
    double g(double tau, double y) const;

private:
    HodographGrid grid_;
    std::vector<BoundaryPoint> values_;
    std::vector<BoundaryPoint> slopes_;
};

}  // namespace vwave
