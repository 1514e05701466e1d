#include "vwave/grid.hpp"

#include <algorithm>
#include <cmath>

#include "vwave/errors.hpp"

namespace vwave {

HodographGrid make_grid(double delta, int n_tau, Interval y_range, int n_y_reported, double max_speed) {
    if (!(delta > 0.0)) throw Error(ErrorKind::Usage, "grid: delta must be positive");
    if (n_tau < 1 || n_y_reported < 2) throw Error(ErrorKind::Usage, "grid: need n_tau >= 1 and n_y >= 2");
    if (!(y_range.hi > y_range.lo)) throw Error(ErrorKind::Usage, "grid: y_range must satisfy lo < hi");
    HodographGrid g;
    g.delta = delta;
    g.n_tau = n_tau;
    g.y_range = y_range;
    g.h_y = y_range.length() / (n_y_reported - 1);
    const double width = 2.0 * delta * std::abs(max_speed);
    g.buffer = std::max(3, static_cast<int>(std::ceil(width / g.h_y)) + 2);
    g.n_y = n_y_reported + 2 * g.buffer;
    g.y0 = y_range.lo - g.buffer * g.h_y;
    return g;
}

bool same_grid(const HodographGrid& a, const HodographGrid& b) {
    return a.delta == b.delta && a.n_tau == b.n_tau && a.n_y == b.n_y && a.y0 == b.y0 && a.h_y == b.h_y;
}

FieldQuartet::FieldQuartet(int levels, int n_y) : levels_(levels), n_y_(n_y) {
    for (auto& v : values_) v.assign(static_cast<std::size_t>(levels) * n_y, 0.0);
}

std::array<double, 4> FieldQuartet::at(int k, int m) const {
    const auto i = idx(k, m);
    return {values_[0][i], values_[1][i], values_[2][i], values_[3][i]};
}

CubicStencil cubic_stencil(const HodographGrid& grid, double y) {
    const double s = (y - grid.y0) / grid.h_y;
    const int cell = static_cast<int>(std::floor(s));
    CubicStencil st;
    st.first = std::clamp(cell - 1, 0, grid.n_y - 4);
    const double t = s - st.first;  // position relative to stencil nodes 0..3
    st.w[0] = -(t - 1.0) * (t - 2.0) * (t - 3.0) / 6.0;
    st.w[1] = t * (t - 2.0) * (t - 3.0) / 2.0;
    st.w[2] = -t * (t - 1.0) * (t - 3.0) / 2.0;
    st.w[3] = t * (t - 1.0) * (t - 2.0) / 6.0;
    return st;
}

double interpolate_component(const FieldQuartet& f, const CubicStencil& s, int i, int k) {
    double v = 0.0;
    for (int q = 0; q < 4; ++q) v += s.w[q] * f(i, k, s.first + q);
    return v;
}

std::array<double, 4> interpolate(const FieldQuartet& f, const CubicStencil& s, int k) {
    return {interpolate_component(f, s, 0, k), interpolate_component(f, s, 1, k), interpolate_component(f, s, 2, k),
            interpolate_component(f, s, 3, k)};
}

namespace {

constexpr int kChannels = 16;

std::array<double, kChannels> pack(const BoundaryPoint& b) {
    return {b.psi1, b.dpsi1, b.psi2, b.dpsi2, b.phi2, b.dphi2, b.ddphi2, b.f11,
            b.f21,  b.f22,   b.g11,  b.g21,   b.g22,  b.dg11,  b.dg21, b.dg22};
}

BoundaryPoint unpack(const std::array<double, kChannels>& v, double y) {
    BoundaryPoint b;
    b.y = y;
    b.psi1 = v[0];
    b.dpsi1 = v[1];
    b.psi2 = v[2];
    b.dpsi2 = v[3];
    b.phi2 = v[4];
    b.dphi2 = v[5];
    b.ddphi2 = v[6];
    b.f11 = v[7];
    b.f21 = v[8];
    b.f22 = v[9];
    b.g11 = v[10];
    b.g21 = v[11];
    b.g22 = v[12];
    b.dg11 = v[13];
    b.dg21 = v[14];
    b.dg22 = v[15];
    return b;
}

struct Hermite {
    int cell;
    double h00, h10, h01, h11;
};

Hermite hermite(const HodographGrid& grid, double y) {
    const double s = (y - grid.y0) / grid.h_y;
    Hermite h;
    h.cell = std::clamp(static_cast<int>(std::floor(s)), 0, grid.n_y - 2);
    const double t = s - h.cell, t2 = t * t, t3 = t2 * t;
    h.h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    h.h10 = (t3 - 2.0 * t2 + t) * grid.h_y;
    h.h01 = -2.0 * t3 + 3.0 * t2;
    h.h11 = (t3 - t2) * grid.h_y;
    return h;
}

}  // namespace

BoundaryTable::BoundaryTable(const DerivedBoundary& boundary, const HodographGrid& grid) : grid_(grid) {
    values_.reserve(static_cast<std::size_t>(grid.n_y));
    slopes_.reserve(static_cast<std::size_t>(grid.n_y));
    for (int m = 0; m < grid.n_y; ++m) {
        values_.push_back(boundary.at(grid.y(m)));
        slopes_.push_back(boundary.slope_at(grid.y(m)));
    }
}

BoundaryPoint BoundaryTable::at(double y) const {
    const Hermite h = hermite(grid_, y);
    const auto v0 = pack(values_[h.cell]), v1 = pack(values_[h.cell + 1]);
    const auto d0 = pack(slopes_[h.cell]), d1 = pack(slopes_[h.cell + 1]);
    std::array<double, kChannels> v{};
    for (int c = 0; c < kChannels; ++c) v[c] = h.h00 * v0[c] + h.h10 * d0[c] + h.h01 * v1[c] + h.h11 * d1[c];
    return unpack(v, y);
}

double BoundaryTable::g(double tau, double y) const {
    const Hermite h = hermite(grid_, y);
    const BoundaryPoint &b0 = values_[h.cell], &b1 = values_[h.cell + 1];
    const BoundaryPoint &s0 = slopes_[h.cell], &s1 = slopes_[h.cell + 1];
    const double psi1 = h.h00 * b0.psi1 + h.h10 * s0.psi1 + h.h01 * b1.psi1 + h.h11 * s1.psi1;
    const double g11 = h.h00 * b0.g11 + h.h10 * s0.g11 + h.h01 * b1.g11 + h.h11 * s1.g11;
    return psi1 + g11 * tau;
}

}  // namespace vwave
