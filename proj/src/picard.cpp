#include "vwave/picard.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace vwave {

HodographProblem::HodographProblem(const MaterialModel& model, const ScenarioData& data, ClassBounds bounds,
                                   HodographGrid grid, double eps_dd)
    : grid_(grid),
      table_(DerivedBoundary(model, data), grid),
      line_(line_constants(model, data.phi1)),
      bounds_(bounds),
      lambda_(data.lambda) {
    levels_.reserve(static_cast<std::size_t>(grid.levels()));
    for (int k = 0; k < grid.levels(); ++k) levels_.push_back(make_level(model, data.phi1, grid.tau(k), eps_dd));
}

SourceContext HodographProblem::context(int k, const BoundaryPoint& b, const std::array<double, 4>& U) const {
    SourceContext ctx;
    ctx.level = level(k);
    ctx.line = line_;
    ctx.b = b;
    ctx.U = U;
    ctx.lambda = lambda_;
    ctx.bounds = bounds_;
    return ctx;
}

namespace {

std::string at_node(double tau, double y) {
    std::ostringstream os;
    os.precision(10);
    os << " (tau = " << tau << ", y = " << y << ")";
    return os.str();
}

/// Speed of the family at level k and position y for the field value read there.
double family_speed(const HodographProblem& p, int k, double y, double u_read, Family fam, double* denominator) {
    const LevelState& L = p.level(k);
    const double D = L.c1 * (u_read + p.boundary().g(L.tau, y));
    const double bound = 0.5 * p.bounds().m0 * p.bounds().psi0;
    if (!(std::abs(D) >= bound))
        throw Error(ErrorKind::ClassBreach, "class-membership breach: characteristic denominator |c'(U + g)| = " +
                                                std::to_string(std::abs(D)) + " below m0*psi0/2" +
                                                at_node(L.tau, y) + "; shrink delta");
    if (denominator) *denominator = std::min(*denominator, std::abs(D));
    return fam == Family::Plus ? -L.tau / D : L.tau / D;
}

int speed_component(Family fam) { return fam == Family::Plus ? 1 : 0; }

/// Walks the backward characteristic from node (k, m); visit(l, y_l, stencil) is called for l = k..0.
/// Returns true when the path left the sampled domain (position clamped).
template <class Visit>
bool walk(const HodographProblem& p, const FieldQuartet& f, int k, int m, Family fam, double* denominator,
          Visit&& visit) {
    const HodographGrid& g = p.grid();
    const int comp = speed_component(fam);
    const double h = g.h_tau();
    const double lo = g.y_first(), hi = g.y_last();
    bool left = false;
    auto clamp = [&](double y) {
        if (y < lo || y > hi) {
            if (g.reported(m))
                throw Error(ErrorKind::DomainOfDependence,
                            "domain-of-dependence breach: characteristic from" + at_node(g.tau(k), g.y(m)) +
                                " leaves the buffered domain; widen the buffer");
            left = true;
            return std::clamp(y, lo, hi);
        }
        return y;
    };

    double y = g.y(m);
    CubicStencil st = cubic_stencil(g, y);
    double speed = family_speed(p, k, y, f(comp, k, m), fam, denominator);
    visit(k, y, st);
    for (int l = k - 1; l >= 0; --l) {
        const double y_pred = clamp(y - h * speed);
        const CubicStencil sp = cubic_stencil(g, y_pred);
        const double speed_pred = family_speed(p, l, y_pred, interpolate_component(f, sp, comp, l), fam, denominator);
        y = clamp(y - 0.5 * h * (speed + speed_pred));
        st = cubic_stencil(g, y);
        speed = l > 0 ? family_speed(p, l, y, interpolate_component(f, st, comp, l), fam, denominator) : 0.0;
        visit(l, y, st);
    }
    return left;
}

}  // namespace

CharacteristicPath trace_characteristic(const HodographProblem& problem, const FieldQuartet& field, int k, int m,
                                        Family family) {
    const HodographGrid& g = problem.grid();
    if (k < 0 || k >= g.levels() || m < 0 || m >= g.n_y)
        throw Error(ErrorKind::Usage, "trace_characteristic: endpoint outside the grid");
    CharacteristicPath path;
    path.xi = g.tau(k);
    path.eta = g.y(m);
    path.family = family;
    path.y.assign(static_cast<std::size_t>(k + 1), 0.0);
    path.left_domain = walk(problem, field, k, m, family, nullptr,
                            [&](int l, double y, const CubicStencil&) { path.y[static_cast<std::size_t>(l)] = y; });
    return path;
}

FieldQuartet picard_step(const HodographProblem& problem, const FieldQuartet& field, StepDiagnostics* diagnostics) {
    const HodographGrid& g = problem.grid();
    if (field.levels() != g.levels() || field.n_y() != g.n_y)
        throw Error(ErrorKind::Usage, "picard_step: field does not match the grid");
    FieldQuartet out(g.levels(), g.n_y);
    const double h = g.h_tau();

    double min_den = std::numeric_limits<double>::infinity();
    int excluded = 0;
    std::string error_text;
    ErrorKind error_kind = ErrorKind::ClassBreach;
    int error_node = std::numeric_limits<int>::max();

#pragma omp parallel for schedule(dynamic) reduction(min : min_den) reduction(+ : excluded)
    for (int m = 0; m < g.n_y; ++m) {
        try {
            bool node_left = false;
            for (int k = 1; k < g.levels(); ++k) {
                for (Family fam : {Family::Plus, Family::Minus}) {
                    const int c1 = fam == Family::Plus ? 0 : 1;  // U1/U3 along +, U2/U4 along -
                    const int c2 = c1 + 2;
                    double s1 = 0.0, s2 = 0.0;
                    node_left |= walk(problem, field, k, m, fam, &min_den, [&](int l, double y, const CubicStencil& st) {
                        const std::array<double, 4> U = l == k ? field.at(k, m) : interpolate(field, st, l);
                        const BoundaryPoint b = l == k ? problem.boundary().node(m) : problem.boundary().at(y);
                        const SourceValues v = eval_rhs(problem.context(l, b, U));
                        const double w = (l == k || l == 0) ? 0.5 * h : h;
                        s1 += w * v.rhs[c1];
                        s2 += w * v.rhs[c2];
                    });
                    out(c1, k, m) = s1;
                    out(c2, k, m) = s2;
                }
            }
            if (node_left) ++excluded;
        } catch (const Error& e) {
#pragma omp critical
            {
                if (m < error_node) {
                    error_node = m;
                    error_text = e.what();
                    error_kind = e.kind();
                }
            }
        }
    }
    if (error_node != std::numeric_limits<int>::max()) throw Error(error_kind, error_text);
    if (diagnostics) {
        diagnostics->min_denominator = min_den;
        diagnostics->excluded_nodes = excluded;
    }
    return out;
}

Distance weighted_distance(const HodographGrid& grid, const FieldQuartet& f, const FieldQuartet& g) {
    if (f.levels() != grid.levels() || g.levels() != grid.levels() || f.n_y() != grid.n_y || g.n_y() != grid.n_y)
        throw Error(ErrorKind::Usage, "weighted_distance: fields live on different grids");
    Distance d;
    double best = -1.0;
    for (int i = 0; i < 4; ++i) {
        double sup = 0.0;
        for (int k = 1; k < grid.levels(); ++k) {
            const double t2 = grid.tau(k) * grid.tau(k);
            for (int m = 0; m < grid.n_y; ++m) {
                const double r = std::abs(f(i, k, m) - g(i, k, m)) / t2;
                sup = std::max(sup, r);
                if (r > best) {
                    best = r;
                    d.k = k;
                    d.m = m;
                }
            }
        }
        d.value += sup;
    }
    return d;
}

double p2_ratio(const HodographGrid& grid, const FieldQuartet& f) {
    double total = 0.0;
    for (int i = 0; i < 4; ++i) {
        double sup = 0.0;
        for (int k = 1; k < grid.levels(); ++k)
            for (int m = grid.first_reported(); m <= grid.last_reported(); ++m)
                sup = std::max(sup, std::abs(f(i, k, m)) / (grid.tau(k) * grid.tau(k)));
        total += sup;
    }
    return total;
}

double p3_ratio(const HodographGrid& grid, const FieldQuartet& f) {
    double total = 0.0;
    for (int i = 0; i < 4; ++i) {
        double sup = 0.0;
        for (int k = 1; k < grid.levels(); ++k)
            for (int m = grid.first_reported(); m <= grid.last_reported(); ++m) {
                const double d = (f(i, k, m + 1) - f(i, k, m - 1)) / (2.0 * grid.h_y);
                sup = std::max(sup, std::abs(d) / (grid.tau(k) * grid.tau(k)));
            }
        total += sup;
    }
    return total;
}

void summarize_contraction(IterationReport& report) {
    std::vector<double> ratios, logs;
    for (const auto& r : report.records) {
        if (r.iteration > 1 && r.ratio > 0.0) ratios.push_back(r.ratio);
        if (r.distance > 0.0) logs.push_back(std::log(r.distance));
    }
    if (!ratios.empty()) {
        std::vector<double> tail(ratios.end() - std::min<std::ptrdiff_t>(3, std::ssize(ratios)), ratios.end());
        std::sort(tail.begin(), tail.end());
        report.kappa = tail[tail.size() / 2];
        if (tail.size() == 2) report.kappa = 0.5 * (tail[0] + tail[1]);
    }
    const std::size_t n = std::min<std::size_t>(5, logs.size());
    if (n >= 3) {
        const std::vector<double> ys(logs.end() - static_cast<std::ptrdiff_t>(n), logs.end());
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < n; ++i) {
            sx += i;
            sy += ys[i];
            sxx += double(i) * i;
            sxy += i * ys[i];
        }
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        const double icpt = (sy - slope * sx) / n;
        double res = 0.0;
        for (std::size_t i = 0; i < n; ++i) res = std::max(res, std::abs(ys[i] - (icpt + slope * i)));
        const auto [lo, hi] = std::minmax_element(ys.begin(), ys.end());
        report.kappa_fit = std::exp(slope);
        report.fit_log_residual_abs = res;
        report.fit_log_residual = *hi > *lo ? res / (*hi - *lo) : 0.0;
    }
}

FixedPointResult solve_fixed_point(const HodographProblem& problem, const SolverOptions& options) {
    if (!(options.tol > 0.0) || options.max_iters < 1)
        throw Error(ErrorKind::Usage, "solve_fixed_point: need tol > 0 and max_iters >= 1");
    const HodographGrid& g = problem.grid();
    IterationReport report;
    report.M = options.M;
    report.denominator_bound = 0.5 * problem.bounds().m0 * problem.bounds().psi0;
    report.min_denominator = std::numeric_limits<double>::infinity();

    FieldQuartet current(g.levels(), g.n_y);
    int increases = 0;
    for (int n = 1; n <= options.max_iters; ++n) {
        StepDiagnostics diag;
        FieldQuartet next;
        try {
            next = picard_step(problem, current, &diag);
        } catch (const Error& e) {
            report.iterations = n - 1;
            summarize_contraction(report);
            throw SolverFailure(e.kind(), std::string(e.what()) + " (iteration " + std::to_string(n) + ")", report);
        }
        const Distance d = weighted_distance(g, next, current);
        IterationRecord rec;
        rec.iteration = n;
        rec.distance = d.value;
        rec.ratio = report.records.empty() || report.records.back().distance == 0.0
                        ? 0.0
                        : d.value / report.records.back().distance;
        rec.p2_max = p2_ratio(g, next);
        rec.p3_max = p3_ratio(g, next);
        rec.min_denominator = diag.min_denominator;
        rec.argmax_tau = g.tau(d.k);
        rec.argmax_y = g.y(d.m);
        report.min_denominator = std::min(report.min_denominator, diag.min_denominator);
        if (!report.records.empty() && d.value > report.records.back().distance) ++increases;
        else increases = 0;
        report.records.push_back(rec);
        report.iterations = n;
        current = std::move(next);

        if (!std::isfinite(d.value)) {
            summarize_contraction(report);
            throw SolverFailure(ErrorKind::Contraction, "contraction failure: non-finite iterate; shrink delta or lambda",
                                report);
        }
        if (d.value <= options.tol) {
            report.converged = true;
            break;
        }
        if (increases >= 3) {
            summarize_contraction(report);
            throw SolverFailure(ErrorKind::Contraction,
                                "contraction failure: shrink delta or lambda (distance grew for 3 consecutive "
                                "iterations)",
                                report);
        }
    }
    summarize_contraction(report);
    report.p2_max = report.records.back().p2_max;
    report.p3_max = report.records.back().p3_max;
    if (!report.converged)
        throw SolverFailure(ErrorKind::Contraction,
                            "contraction failure: shrink delta or lambda (no convergence within " +
                                std::to_string(options.max_iters) + " iterations)",
                            report);
    return {std::move(current), std::move(report)};
}

double speed_bound(double delta, ClassBounds bounds) { return delta / (0.5 * bounds.m0 * bounds.psi0); }

WindowChoice select_window(const MaterialModel& model, const ScenarioData& data, ClassBounds bounds) {
    const int n = 1001;
    double K = 1.0, c1_max = 0.0;
    const Interval ud = model.u_domain();
    for (int i = 0; i < n; ++i) {
        const double u = ud.lo + ud.length() * i / (n - 1);
        const Jet c = model.c_jet(u), a = model.a_jet(u);
        for (int l = 1; l <= 3; ++l) K = std::max(K, std::abs(c.derivative(l)));
        for (int l = 0; l <= 3; ++l) K = std::max(K, std::abs(a.derivative(l)));
        c1_max = std::max(c1_max, std::abs(c.derivative(1)));
    }
    const DerivedBoundary boundary(model, data);
    double g11_max = 0.0;
    const Interval yr = data.y_range;
    for (int i = 0; i < n; ++i) {
        const double y = yr.lo + yr.length() * i / (n - 1);
        const Jet p2 = data.phi2(y), q1 = data.psi1(y), q2 = data.psi2(y);
        for (int l = 1; l <= 4; ++l) K = std::max(K, std::abs(p2.derivative(l)));
        for (int l = 0; l <= 3; ++l) K = std::max({K, std::abs(q1.derivative(l)), std::abs(q2.derivative(l))});
        g11_max = std::max(g11_max, std::abs(boundary.at(y).g11));
    }
    const double base = bounds.m0 * bounds.psi0;
    K = std::max({K, 2.0 / base, 2.0 / (bounds.m0 * base)});

    WindowChoice w;
    w.K = K;
    w.M = 64.0 * K;
    w.lambda_cap = 1.0 / (32.0 * K);
    // Largest delta0 keeping m0 psi0 - delta0 (|c'| M delta0 + |c' g11|) >= m0 psi0 / 2.
    const double qa = c1_max * w.M, qb = c1_max * g11_max, qc = -0.5 * base;
    w.delta0 = (-qb + std::sqrt(qb * qb - 4.0 * qa * qc)) / (2.0 * qa);
    w.delta_theory = std::min(1.0 / w.M, w.delta0);
    w.lambda_warning = std::abs(data.lambda) > w.lambda_cap;
    return w;
}

}  // namespace vwave
