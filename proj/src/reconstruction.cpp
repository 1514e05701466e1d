#include "vwave/reconstruction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace vwave {

Invariants recover_invariants(const HodographProblem& problem, const FieldQuartet& field) {
    const HodographGrid& g = problem.grid();
    Invariants inv;
    inv.levels = g.levels();
    inv.n_y = g.n_y;
    for (auto& v : inv.values) v.resize(static_cast<std::size_t>(g.levels()) * g.n_y);
    for (int k = 0; k < g.levels(); ++k) {
        const double tau = g.tau(k);
        for (int m = 0; m < g.n_y; ++m) {
            const BoundaryPoint& b = problem.boundary().node(m);
            const std::size_t i = static_cast<std::size_t>(k) * g.n_y + m;
            inv.values[0][i] = field(0, k, m) + b.psi1 + b.g11 * tau;
            inv.values[1][i] = field(1, k, m) + b.psi1 + b.g11 * tau;
            inv.values[2][i] = field(2, k, m) + b.psi2 + b.g21 * tau;
            inv.values[3][i] = field(3, k, m) + b.psi2 + b.g22 * tau;
        }
    }
    return inv;
}

namespace {

std::string node_text(double tau, double y) {
    std::ostringstream os;
    os.precision(10);
    os << " at tau = " << tau << ", y = " << y;
    return os.str();
}

}  // namespace

TimeMap compute_time_map(const HodographProblem& problem, const Invariants& inv) {
    const HodographGrid& g = problem.grid();
    const double bound = 0.5 * problem.bounds().m0 * problem.bounds().psi0;
    const double h = g.h_tau();
    TimeMap tm;
    tm.t.assign(static_cast<std::size_t>(g.levels()) * g.n_y, 0.0);
    tm.J.assign(tm.t.size(), 0.0);
    tm.min_jacobian = std::numeric_limits<double>::infinity();
    for (int m = 0; m < g.n_y; ++m) {
        double prev_rate = 0.0;
        for (int k = 0; k < g.levels(); ++k) {
            const std::size_t i = static_cast<std::size_t>(k) * g.n_y + m;
            const double J = -problem.level(k).c1 * (inv(0, k, m) + inv(1, k, m)) / 2.0;
            if (!(J >= bound))
                throw Error(ErrorKind::Reconstruction, "Jacobian degeneration: J = " + std::to_string(J) +
                                                           " below m0*psi0/2" + node_text(g.tau(k), g.y(m)));
            tm.J[i] = J;
            tm.min_jacobian = std::min(tm.min_jacobian, J);
            const double rate = 1.0 / J;
            if (k > 0) tm.t[i] = tm.t[i - g.n_y] + 0.5 * h * (prev_rate + rate);
            prev_rate = rate;
        }
    }
    return tm;
}

AngleFields compute_u_and_v(const HodographProblem& problem, const Invariants& inv) {
    const HodographGrid& g = problem.grid();
    const double h = g.h_tau();
    AngleFields af;
    af.u.resize(static_cast<std::size_t>(g.levels()));
    for (int k = 0; k < g.levels(); ++k) af.u[static_cast<std::size_t>(k)] = problem.level(k).u;
    af.v.assign(static_cast<std::size_t>(g.levels()) * g.n_y, 0.0);
    af.v_tau.assign(af.v.size(), 0.0);
    for (int m = 0; m < g.n_y; ++m) {
        for (int k = 0; k < g.levels(); ++k) {
            const std::size_t i = static_cast<std::size_t>(k) * g.n_y + m;
            const double c1 = problem.level(k).c1;
            af.v_tau[i] = -(inv(2, k, m) + inv(3, k, m)) / (c1 * (inv(0, k, m) + inv(1, k, m)));
            af.v[i] = k == 0 ? problem.boundary().node(m).phi2
                             : af.v[i - g.n_y] + 0.5 * h * (af.v_tau[i - g.n_y] + af.v_tau[i]);
        }
    }
    return af;
}

namespace {

struct Sample {
    double tau;
    double u;
    double v;
};

/// Four-point Lagrange interpolation through (x[i], y[i]), i = first..first+3.
double lagrange4(const double* x, const double* y, double t) {
    double r = 0.0;
    for (int i = 0; i < 4; ++i) {
        double w = 1.0;
        for (int j = 0; j < 4; ++j)
            if (j != i) w *= (t - x[j]) / (x[i] - x[j]);
        r += w * y[i];
    }
    return r;
}

/// Reads one column at an arbitrary physical time: tau(t) by cubic interpolation through the
/// mapped nodes (t_k, tau_k), then v by cubic interpolation in tau and u from the wave-speed inversion.
/// Interpolating the discrete nodes (rather than using exact slopes) keeps second differences of the
/// samples consistent with the trapezoid map.
class ColumnReader {
public:
    ColumnReader(const HodographProblem& p, const MaterialModel& model, double phi1, const TimeMap& tm,
                 const AngleFields& af)
        : p_(p), model_(model), phi1_(phi1), tm_(tm), af_(af) {
        const HodographGrid& g = p.grid();
        taus_.resize(static_cast<std::size_t>(g.levels()));
        for (int k = 0; k < g.levels(); ++k) taus_[static_cast<std::size_t>(k)] = g.tau(k);
    }

    double t_top(int m) const { return tm_.t[idx(p_.grid().n_tau, m)]; }

    Sample at(int m, double t) const {
        const HodographGrid& g = p_.grid();
        int lo = 0, hi = g.n_tau;
        while (hi - lo > 1) {
            const int mid = (lo + hi) / 2;
            if (tm_.t[idx(mid, m)] <= t) lo = mid;
            else hi = mid;
        }
        const int first = std::clamp(lo - 1, 0, g.n_tau - 3);
        double ts[4], tau4[4], v4[4];
        for (int q = 0; q < 4; ++q) {
            ts[q] = tm_.t[idx(first + q, m)];
            tau4[q] = taus_[static_cast<std::size_t>(first + q)];
        }
        const double tau = std::max(lagrange4(ts, tau4, t), 0.0);
        const double s = tau / g.h_tau();
        const int vf = std::clamp(static_cast<int>(std::floor(s)) - 1, 0, g.n_tau - 3);
        for (int q = 0; q < 4; ++q) {
            tau4[q] = taus_[static_cast<std::size_t>(vf + q)];
            v4[q] = af_.v[idx(vf + q, m)];
        }
        const double v = lagrange4(tau4, v4, tau);
        return {tau, invert_wave_speed(model_, phi1_, tau), v};
    }

private:
    std::size_t idx(int k, int m) const { return static_cast<std::size_t>(k) * p_.grid().n_y + m; }

    const HodographProblem& p_;
    const MaterialModel& model_;
    double phi1_;
    const TimeMap& tm_;
    const AngleFields& af_;
    std::vector<double> taus_;
};

struct NormAccumulator {
    double sup = 0.0, sum = 0.0;
    void add(double r, double weight) {
        sup = std::max(sup, std::abs(r));
        sum += r * r * weight;
    }
    ResidualNorms norms() const { return {sup, std::sqrt(sum)}; }
};

}  // namespace

Reconstruction reconstruct(const HodographProblem& problem, const MaterialModel& model, const ScenarioData& data,
                           const FieldQuartet& field) {
    const HodographGrid& g = problem.grid();
    const Invariants inv = recover_invariants(problem, field);
    const TimeMap tm = compute_time_map(problem, inv);
    const AngleFields af = compute_u_and_v(problem, inv);
    const ColumnReader reader(problem, model, data.phi1, tm, af);

    Reconstruction rec;
    PhysicalSolution& sol = rec.solution;
    ConsistencyReport& rep = rec.report;
    rep.min_jacobian = tm.min_jacobian;
    rep.jacobian_bound = 0.5 * problem.bounds().m0 * problem.bounds().psi0;

    const int first = g.first_reported(), last = g.last_reported();
    sol.levels = g.levels();
    sol.columns = last - first + 1;
    sol.nodes.resize(static_cast<std::size_t>(sol.levels) * sol.columns);

    NormAccumulator h1, h2, h1e, h2e;
    const double area = g.h_tau() * g.h_y;
    for (int k = 0; k < g.levels(); ++k) {
        for (int m = first; m <= last; ++m) {
            const std::size_t i = static_cast<std::size_t>(k) * g.n_y + m;
            PhysicalNode& n = sol.nodes[static_cast<std::size_t>(k) * sol.columns + (m - first)];
            n.tau = g.tau(k);
            n.t = tm.t[i];
            n.x = g.y(m);
            n.u = af.u[static_cast<std::size_t>(k)];
            n.v = af.v[i];
            n.R1 = inv(0, k, m);
            n.S1 = inv(1, k, m);
            n.R2 = inv(2, k, m);
            n.S2 = inv(3, k, m);
            n.J = tm.J[i];

            // Values of the neighbouring columns at this node's physical time.
            const Sample own = reader.at(m, n.t);
            rep.roundtrip_max = std::max(rep.roundtrip_max, std::abs(own.tau + model.c(n.u)));
            if (k == 0) {
                const BoundaryPoint& b = problem.boundary().node(m);
                rep.initial_data_max =
                    std::max({rep.initial_data_max, std::abs(n.u - data.phi1), std::abs(0.5 * (n.R1 + n.S1) - b.psi1),
                              std::abs(n.v - b.phi2), std::abs(0.5 * (n.R2 + n.S2) - b.psi2)});
                continue;
            }
            const Sample right = reader.at(m + 1, n.t), left = reader.at(m - 1, n.t);
            const double ux = (right.u - left.u) / (2.0 * g.h_y);
            const double vx = (right.v - left.v) / (2.0 * g.h_y);
            const double c = model.c(n.u);
            n.H1 = n.R1 - n.S1 - 2.0 * c * ux;
            n.H2 = n.R2 - n.S2 - 2.0 * c * vx;
            if (k <= 2) {
                h1e.add(n.H1, area);
                h2e.add(n.H2, area);
            } else {
                h1.add(n.H1, area);
                h2.add(n.H2, area);
            }
        }
    }
    rep.H1 = h1.norms();
    rep.H2 = h2.norms();
    rep.H1_early = h1e.norms();
    rep.H2_early = h2e.norms();

    // Rectangular lattice over the reported columns and one neighbour on each side.
    double t_end = std::numeric_limits<double>::infinity();
    for (int m = first - 1; m <= last + 1; ++m) t_end = std::min(t_end, reader.t_top(m));
    const int rows = g.n_tau;
    const int cols = last - first + 3;
    if (!(t_end > 0.0) || rows < 5)
        throw Error(ErrorKind::Reconstruction, "reconstruction coverage gap: mapped grid does not cover the lattice");
    rep.t_end = t_end;
    rep.lattice_rows = rows + 1;
    rep.lattice_cols = cols;
    const double dt = t_end / rows, dx = g.h_y;
    std::vector<double> U((rows + 1) * static_cast<std::size_t>(cols)), V(U.size());
    auto at = [cols](int j, int c) { return static_cast<std::size_t>(j) * cols + c; };
    for (int j = 0; j <= rows; ++j)
        for (int c = 0; c < cols; ++c) {
            const Sample s = reader.at(first - 1 + c, j * dt);
            U[at(j, c)] = s.u;
            V[at(j, c)] = s.v;
        }

    double scale = 0.0;
    for (std::size_t i = 0; i < U.size(); ++i) scale = std::max({scale, std::abs(U[i]), std::abs(V[i])});
    rep.pde_roundoff = 8.0 * std::numeric_limits<double>::epsilon() * scale * (1.0 / (dt * dt) + 1.0 / (dx * dx));

    const double lam = data.lambda;
    auto cc = [&](double u) { return model.c(u) * model.c(u); };
    auto aa2 = [&](double u) { return model.a(u) * model.a(u); };
    NormAccumulator p1, p2;
    for (int j = 1; j < rows; ++j) {
        const double t = j * dt;
        if (t < 0.2 * t_end || t > 0.8 * t_end) continue;
        for (int c = 1; c < cols - 1; ++c) {
            const double u = U[at(j, c)];
            const Jet cj = model.c_jet(u), aj = model.a_jet(u);
            const double cv = cj.value(), c1 = cj.derivative(1), av = aj.value(), a1 = aj.derivative(1);
            const double ue = U[at(j, c + 1)], uw = U[at(j, c - 1)], un = U[at(j + 1, c)], us = U[at(j - 1, c)];
            const double ve = V[at(j, c + 1)], vw = V[at(j, c - 1)], vn = V[at(j + 1, c)], vs = V[at(j - 1, c)];
            const double v0 = V[at(j, c)];

            const double utt = (un - 2.0 * u + us) / (dt * dt);
            const double c2e = 0.5 * (cv * cv + cc(ue)), c2w = 0.5 * (cv * cv + cc(uw));
            const double flux = (c2e * (ue - u) - c2w * (u - uw)) / (dx * dx);
            const double ux = (ue - uw) / (2.0 * dx), vx = (ve - vw) / (2.0 * dx), vt = (vn - vs) / (2.0 * dt);
            const double r1 = utt - flux + cv * c1 * ux * ux - av * a1 * (vt * vt - cv * cv * vx * vx) +
                              av * av * cv * c1 * vx * vx - 2.0 * lam * av * a1 * vx;

            const double a2 = av * av;
            const double a2n = 0.5 * (a2 + aa2(un)), a2s = 0.5 * (a2 + aa2(us));
            const double time_flux = (a2n * (vn - v0) - a2s * (v0 - vs)) / (dt * dt);
            const double k2e = 0.5 * (a2 * cv * cv + aa2(ue) * cc(ue)), k2w = 0.5 * (a2 * cv * cv + aa2(uw) * cc(uw));
            const double space_flux = (k2e * (ve - v0) - k2w * (v0 - vw)) / (dx * dx);
            const double chiral = lam * (aa2(ue) - aa2(uw)) / (2.0 * dx);
            const double r2 = time_flux - space_flux + chiral;

            p1.add(r1, dt * dx);
            p2.add(r2, dt * dx);
        }
    }
    rep.pde1 = p1.norms();
    rep.pde2 = p2.norms();
    return rec;
}

}  // namespace vwave
