#include "vwave/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "vwave/errors.hpp"

namespace vwave {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

std::vector<double> sample_points(Interval iv, int n) {
    std::vector<double> pts(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pts[static_cast<std::size_t>(i)] = iv.lo + iv.length() * i / (n - 1);
    return pts;
}

bool all_finite(const Jet& j, int upto) {
    for (int k = 0; k <= upto; ++k)
        if (!std::isfinite(j.coeff(k))) return false;
    return true;
}

/// Worst relative mismatch between derivative k and the central difference of derivative k - 1.
double derivative_mismatch(const JetFunction& f, double x, int upto) {
    const double h = 1e-5 * std::max(1.0, std::abs(x));
    Jet jp = f(x + h), jm = f(x - h), j0 = f(x);
    double worst = 0.0;
    for (int k = 1; k <= upto; ++k) {
        double fd = (jp.derivative(k - 1) - jm.derivative(k - 1)) / (2.0 * h);
        double d = j0.derivative(k);
        worst = std::max(worst, std::abs(fd - d) / std::max(1.0, std::abs(d)));
    }
    return worst;
}

}  // namespace

const AssumptionCheck* ValidationReport::first_failure() const {
    for (const auto& c : checks)
        if (!c.passed) return &c;
    return nullptr;
}

ValidationReport validate_assumptions(const MaterialModel& model, const ScenarioData& data, int samples) {
    ValidationReport rep;
    samples = std::max(samples, 1000);
    auto add = [&rep](std::string name, bool ok, double worst, double bound, std::string detail) {
        rep.checks.push_back({std::move(name), ok, worst, bound, std::move(detail)});
        rep.passed = rep.passed && ok;
    };

    if (!data.phi2 || !data.psi1 || !data.psi2) {
        add("data completeness", false, 0.0, 0.0, "phi2, psi1 and psi2 must all be supplied");
        return rep;
    }

    const double c_line = model.c(data.phi1);
    add("degeneracy condition", std::abs(c_line) <= 1e-12, c_line, 1e-12,
        std::abs(c_line) <= 1e-12 ? "c(phi1) = 0"
                                  : "degeneracy condition violated: c(phi1) = " + fmt(c_line) + " != 0");
    add("phi1 inside u_domain", model.u_domain().contains(data.phi1), data.phi1, 0.0,
        "phi1 = " + fmt(data.phi1) + " must lie in the material u_domain");

    const auto us = sample_points(model.u_domain(), samples);
    double min_abs_c1 = std::numeric_limits<double>::infinity();
    double max_c1 = -std::numeric_limits<double>::infinity();
    double min_abs_a = std::numeric_limits<double>::infinity();
    bool finite = true;
    double mismatch = 0.0;
    for (double u : us) {
        Jet cj = model.c_jet(u), aj = model.a_jet(u);
        finite = finite && all_finite(cj, 4) && all_finite(aj, 4);
        min_abs_c1 = std::min(min_abs_c1, std::abs(cj.derivative(1)));
        max_c1 = std::max(max_c1, cj.derivative(1));
        min_abs_a = std::min(min_abs_a, std::abs(aj.value()));
        mismatch = std::max(mismatch, derivative_mismatch([&model](double x) { return model.c_jet(x); }, u, 4));
        mismatch = std::max(mismatch, derivative_mismatch([&model](double x) { return model.a_jet(x); }, u, 4));
    }
    rep.m0 = std::min(min_abs_c1, min_abs_a);
    add("material derivatives finite", finite, 0.0, 0.0, "c and a derivatives through fourth order on the sample");
    add("material derivative consistency", mismatch <= 1e-6, mismatch, 1e-6,
        "relative mismatch against central differences");
    add("sign case", max_c1 < 0.0, max_c1, 0.0,
        max_c1 < 0.0 ? "c' < 0 on u_domain"
                     : "unsupported sign case: c' must stay negative on u_domain (max c' = " + fmt(max_c1) + ")");
    add("wave-speed slope bound", min_abs_c1 > 0.0, min_abs_c1, 0.0, "min |c'| on u_domain = " + fmt(min_abs_c1));
    add("coupling amplitude bound", min_abs_a > 0.0, min_abs_a, 0.0, "min |a| on u_domain = " + fmt(min_abs_a));
    if (model.declared_m0) {
        bool ok = *model.declared_m0 > 0.0 && *model.declared_m0 <= rep.m0 * (1.0 + 1e-12);
        add("declared m0", ok, rep.m0, *model.declared_m0,
            "declared m0 = " + fmt(*model.declared_m0) + " but sampled min(|c'|, |a|) = " + fmt(rep.m0));
        if (ok) rep.m0 = *model.declared_m0;
    }

    const auto ys = sample_points(data.y_range, samples);
    double min_psi1 = std::numeric_limits<double>::infinity();
    double max_dev = 0.0;
    bool dfinite = true;
    double dmismatch = 0.0;
    double phi2_slope0 = data.phi2(ys.front()).derivative(1);
    double psi1_0 = data.psi1(ys.front()).value();
    double psi2_0 = data.psi2(ys.front()).value();
    for (double y : ys) {
        Jet p2 = data.phi2(y), q1 = data.psi1(y), q2 = data.psi2(y);
        dfinite = dfinite && all_finite(p2, 4) && all_finite(q1, 3) && all_finite(q2, 3);
        min_psi1 = std::min(min_psi1, q1.value());
        max_dev = std::max({max_dev, std::abs(q1.value() - psi1_0), std::abs(q2.value() - psi2_0),
                            std::abs(p2.derivative(1) - phi2_slope0)});
        if (!data.tabulated) {
            dmismatch = std::max(dmismatch, derivative_mismatch(data.phi2, y, 4));
            dmismatch = std::max(dmismatch, derivative_mismatch(data.psi1, y, 3));
            dmismatch = std::max(dmismatch, derivative_mismatch(data.psi2, y, 3));
        }
    }
    rep.psi0 = min_psi1;
    rep.y_independent = max_dev <= 1e-14;
    add("data derivatives finite", dfinite, 0.0, 0.0, "phi2 through order 4, psi1 and psi2 through order 3");
    add("data derivative consistency", dmismatch <= 1e-6, dmismatch, 1e-6,
        data.tabulated ? "skipped for tabulated data" : "relative mismatch against central differences");
    add("initial velocity bound", min_psi1 > 0.0, min_psi1, 0.0,
        min_psi1 > 0.0 ? "min psi1 on y_range = " + fmt(min_psi1)
                       : "unsupported sign case: psi1 must stay positive (min psi1 = " + fmt(min_psi1) + ")");
    if (data.declared_psi0) {
        bool ok = *data.declared_psi0 > 0.0 && *data.declared_psi0 <= min_psi1 * (1.0 + 1e-12);
        add("declared psi0", ok, min_psi1, *data.declared_psi0,
            "declared psi0 = " + fmt(*data.declared_psi0) + " but sampled min psi1 = " + fmt(min_psi1));
        if (ok) rep.psi0 = *data.declared_psi0;
    }
    return rep;
}

void require_valid(const ValidationReport& report) {
    if (const auto* f = report.first_failure()) throw Error(ErrorKind::Validation, f->name + ": " + f->detail);
}

DerivedBoundary::DerivedBoundary(const MaterialModel& model, const ScenarioData& data)
    : phi2_(data.phi2),
      psi1_(data.psi1),
      psi2_(data.psi2),
      phi1_(data.phi1),
      lambda_(data.lambda),
      c1_(model.c_jet(data.phi1).derivative(1)),
      a0_(model.a(data.phi1)),
      a1_(model.a_jet(data.phi1).derivative(1)) {}

struct DerivedBoundary::Channels {
    Jet psi1, dpsi1, psi2, dpsi2, phi2, dphi2, ddphi2, f11, f21, f22, g11, g21, g22, dg11, dg21, dg22;
};

DerivedBoundary::Channels DerivedBoundary::channels(double y) const {
    const Jet p2 = phi2_(y), q1 = psi1_(y), q2 = psi2_(y);
    const Jet dp2 = differentiate(p2);
    const double aa = a0_ * a1_;
    const double ratio = a1_ / a0_;
    Channels ch;
    ch.psi1 = q1;
    ch.dpsi1 = differentiate(q1);
    ch.psi2 = q2;
    ch.dpsi2 = differentiate(q2);
    ch.phi2 = p2;
    ch.dphi2 = dp2;
    ch.ddphi2 = differentiate(dp2);
    ch.f11 = aa * (q2 * q2 + 2.0 * lambda_ * dp2);
    ch.f21 = c1_ * (q1 * dp2) - 2.0 * ratio * (q1 * q2);
    ch.f22 = -c1_ * (q1 * dp2) - 2.0 * ratio * (q1 * q2);
    const Jet scale = c1_ * q1;
    ch.g11 = -(ch.f11 / scale);
    ch.g21 = -(ch.f21 / scale);
    ch.g22 = -(ch.f22 / scale);
    ch.dg11 = differentiate(ch.g11);
    ch.dg21 = differentiate(ch.g21);
    ch.dg22 = differentiate(ch.g22);
    return ch;
}

namespace {
BoundaryPoint pick(const auto& ch, double y, int k) {
    auto d = [k](const Jet& j) { return j.derivative(k); };
    BoundaryPoint b;
    b.y = y;
    b.psi1 = d(ch.psi1);
    b.dpsi1 = d(ch.dpsi1);
    b.psi2 = d(ch.psi2);
    b.dpsi2 = d(ch.dpsi2);
    b.phi2 = d(ch.phi2);
    b.dphi2 = d(ch.dphi2);
    b.ddphi2 = d(ch.ddphi2);
    b.f11 = d(ch.f11);
    b.f21 = d(ch.f21);
    b.f22 = d(ch.f22);
    b.g11 = d(ch.g11);
    b.g21 = d(ch.g21);
    b.g22 = d(ch.g22);
    b.dg11 = d(ch.dg11);
    b.dg21 = d(ch.dg21);
    b.dg22 = d(ch.dg22);
    return b;
}
}  // namespace

BoundaryPoint DerivedBoundary::at(double y) const { return pick(channels(y), y, 0); }

BoundaryPoint DerivedBoundary::slope_at(double y) const { return pick(channels(y), y, 1); }

DerivedBoundary derive_boundary(const MaterialModel& model, const ScenarioData& data) {
    return DerivedBoundary(model, data);
}

double invert_wave_speed(const MaterialModel& model, double phi1, double tau) {
    if (tau < 0.0) throw Error(ErrorKind::Usage, "wave speed inversion needs tau >= 0");
    if (tau == 0.0) return phi1;
    const Interval dom = model.u_domain();
    auto f = [&](double u) { return model.c(u) + tau; };
    double lo = phi1, hi = dom.hi;
    if (f(hi) > 0.0)
        throw Error(ErrorKind::WindowExceeded, "hodograph window exceeded: c(u) = -" + fmt(tau) +
                                                   " has no root inside u_domain [" + fmt(dom.lo) + ", " +
                                                   fmt(dom.hi) + "]");
    const double c1 = model.c_jet(phi1).derivative(1);
    double u = std::clamp(phi1 - tau / c1, lo, hi);
    for (int it = 0; it < 200; ++it) {
        Jet j = model.c_jet(u);
        double r = j.value() + tau;
        if (std::abs(r) <= 1e-15 * std::max(1.0, tau)) break;
        if (r > 0.0) lo = u;
        else hi = u;
        double next = u - r / j.derivative(1);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == u || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(u)))
            break;
        u = next;
    }
    if (std::abs(f(u)) > 1e-12)
        throw Error(ErrorKind::WindowExceeded, "hodograph window exceeded: inversion failed at tau = " + fmt(tau));
    return u;
}

}  // namespace vwave
