#include "vwave/hodograph.hpp"

#include <cmath>
#include <sstream>

#include "vwave/errors.hpp"

namespace vwave {

LineConstants line_constants(const MaterialModel& model, double phi1) {
    Jet c = model.c_jet(phi1), a = model.a_jet(phi1);
    return {c.derivative(1), a.value(), a.derivative(1)};
}

namespace {

void fill_point_values(LevelState& s, const Jet& c, const Jet& a) {
    s.c1 = c.derivative(1);
    s.c2 = c.derivative(2);
    s.a = a.value();
    s.a1 = a.derivative(1);
}

}  // namespace

LevelState make_level_series(const MaterialModel& model, double phi1, double tau) {
    LevelState s;
    s.tau = tau;
    s.u = invert_wave_speed(model, phi1, tau);
    fill_point_values(s, model.c_jet(s.u), model.a_jet(s.u));
    s.series = true;

    const Jet c = model.c_jet(phi1), a = model.a_jet(phi1);
    const double c1 = c.derivative(1), c2 = c.derivative(2), c3 = c.derivative(3);
    // u(tau) along the level map c(u) = -tau.
    const double u1 = -1.0 / c1;
    const double u2 = c2 * u1 / (c1 * c1);
    const double u3 = c3 * u1 * u1 / (c1 * c1) + c2 * u2 / (c1 * c1) - 2.0 * c2 * c2 * u1 * u1 / (c1 * c1 * c1);
    const Jet u_series(Jet::Coeffs{phi1, u1, u2 / 2.0, u3 / 6.0, 0.0});

    auto quotient = [&](const Jet& h) {
        Jet H = compose(h, u_series);
        return H.coeff(1) + H.coeff(2) * tau + H.coeff(3) * tau * tau;
    };
    const Jet dc = differentiate(c), da = differentiate(a);
    s.dd_c1 = quotient(dc);
    s.dd_a2 = -quotient(differentiate(a * a));
    s.dd_a1 = quotient(da);
    s.dd_ac1 = quotient(a * dc);
    return s;
}

LevelState make_level_direct(const MaterialModel& model, double phi1, double tau) {
    LevelState s;
    s.tau = tau;
    s.u = invert_wave_speed(model, phi1, tau);
    fill_point_values(s, model.c_jet(s.u), model.a_jet(s.u));
    const Jet c0 = model.c_jet(phi1), a0 = model.a_jet(phi1);
    const double c10 = c0.derivative(1), av0 = a0.value(), a10 = a0.derivative(1);
    s.dd_c1 = (s.c1 - c10) / tau;
    s.dd_a2 = (2.0 * av0 * a10 - 2.0 * s.a * s.a1) / tau;
    s.dd_a1 = (s.a1 - a10) / tau;
    s.dd_ac1 = (s.a * s.c1 - av0 * c10) / tau;
    return s;
}

LevelState make_level(const MaterialModel& model, double phi1, double tau, double eps_dd) {
    if (tau < eps_dd) return make_level_series(model, phi1, tau);
    return make_level_direct(model, phi1, tau);
}

namespace {

std::string where(const SourceContext& ctx) {
    std::ostringstream os;
    os.precision(10);
    os << " at tau = " << ctx.tau() << ", y = " << ctx.y();
    return os.str();
}

struct Denominators {
    double plus;   // U2 + g, characteristic family +
    double minus;  // U1 + g, characteristic family -
};

Denominators checked_denominators(const SourceContext& ctx) {
    const double g = ctx.b.g(ctx.tau());
    Denominators d{ctx.U[1] + g, ctx.U[0] + g};
    const double bound = 0.5 * ctx.bounds.m0 * ctx.bounds.psi0;
    const double abound = 0.5 * ctx.bounds.m0 * ctx.bounds.m0 * ctx.bounds.psi0;
    for (int i = 0; i < 2; ++i) {
        const double D = i == 0 ? d.plus : d.minus;
        const double cd = std::abs(ctx.level.c1 * D);
        if (!(cd >= bound)) {
            std::ostringstream os;
            os << "class-membership breach: characteristic denominator |c'(U" << (i == 0 ? 2 : 1)
               << " + g)| = " << cd << " below m0*psi0/2 = " << bound << where(ctx) << "; shrink delta";
            throw Error(ErrorKind::ClassBreach, os.str());
        }
        if (!(std::abs(ctx.level.a) * cd >= abound)) {
            std::ostringstream os;
            os << "class-membership breach: coupled denominator |a c'(U" << (i == 0 ? 2 : 1)
               << " + g)| = " << std::abs(ctx.level.a) * cd << " below m0^2*psi0/2 = " << abound << where(ctx)
               << "; shrink delta";
            throw Error(ErrorKind::ClassBreach, os.str());
        }
    }
    return d;
}

}  // namespace

CharSpeeds eval_lambda(const SourceContext& ctx) {
    const Denominators d = checked_denominators(ctx);
    const double cp = ctx.level.c1, tau = ctx.tau();
    return {-tau / (cp * d.plus), tau / (cp * d.minus)};
}

namespace {

/// Coefficients and forcing; the caller has already checked the denominators.
void fill_coefficients(const SourceContext& ctx, const Denominators& den, CoefficientMatrix& T,
                       std::array<double, 4>& F) {
    const LevelState& L = ctx.level;
    const BoundaryPoint& b = ctx.b;
    const double tau = L.tau, lam = ctx.lambda;
    const double cp = L.c1, a = L.a, ap = L.a1, aa = a * ap, a2 = a * a;
    const double c0 = ctx.line.c1, a0 = ctx.line.a;
    const double psi1 = b.psi1, psi2 = b.psi2, ph = b.dphi2;
    const double g11 = b.g11, g21 = b.g21, g22 = b.g22;
    const double U1 = ctx.U[0], U2 = ctx.U[1], U3 = ctx.U[2], U4 = ctx.U[3];
    const double N = aa * psi2 * psi2 + 2.0 * lam * aa * ph;
    const double transport = b.dpsi1 + b.dg11 * tau;
    const double chi = (2.0 * lam * ph + psi2 * psi2) / (2.0 * c0 * psi1) * L.dd_a2;

    // First pair: rows share one denominator each.
    for (int row = 0; row < 2; ++row) {
        const double D = row == 0 ? den.plus : den.minus;
        const double cD = cp * D;
        const double sign = row == 0 ? 1.0 : -1.0;
        T[row] = {0.0, 0.0, 0.0, 0.0};
        T[row][row == 0 ? 1 : 0] = N / (c0 * psi1 * D);
        T[row][2] = (cp * a2 * ph - aa * psi2) / cD;
        T[row][3] = -(cp * a2 * ph + aa * psi2 + aa * U3) / cD;
        F[row] = -(cp * a2 * ph * ph + aa * psi2 * (g21 + g22)) / cD +
                 (sign * transport - aa * g21 * g22 * tau) / cD - aa * (g22 * U3 + g21 * U4) / cD +
                 N * g11 / (c0 * psi1 * D) + N / (c0 * cD) * L.dd_c1 + chi;
    }

    // Second pair.
    for (int row = 2; row < 4; ++row) {
        const double D = row == 2 ? den.plus : den.minus;
        const double acD = a * cp * D;
        const double cross = 2.0 * ap * psi1 * psi2 / (a0 * c0 * psi1 * D);
        T[row][0] = (ap * psi2 - a * cp * ph) / acD;
        T[row][1] = (ap * psi2 + a * cp * ph) / acD;
        T[row][row == 2 ? 1 : 0] -= cross;
        T[row][2] = ap * (U2 + psi1) / acD;
        T[row][3] = ap * (U1 + psi1) / acD;
        const double own = row == 2 ? b.dpsi2 + b.dg21 * tau : -(b.dpsi2 + b.dg22 * tau);
        F[row] = ap * (g22 * U1 + g21 * U2 + g11 * U3 + g11 * U4) / acD +
                 (a * own + ap * g11 * (g22 + g21) * tau) / acD +
                 ap * (psi1 * g22 + 2.0 * psi2 * g11 + psi1 * g21) / acD +
                 2.0 * psi2 * psi1 / (a0 * c0 * psi1) * L.dd_a1 - cross * g11 -
                 2.0 * ap * psi1 * psi2 / (acD * a0 * c0) * L.dd_ac1;
    }
}

void check_finite(const SourceContext& ctx, const SourceTerms& t) {
    double total = 0.0;
    for (int i = 0; i < 4; ++i) {
        total += t.leading[i] + t.chiral[i] + t.quadratic[i] + t.F[i];
        for (int j = 0; j < 4; ++j) total += t.T[i][j];
    }
    if (std::isfinite(total)) return;
    auto fail = [&ctx](const std::string& term) {
        throw Error(ErrorKind::SourceAssembly, "source assembly failure: non-finite " + term + where(ctx));
    };
    for (int i = 0; i < 4; ++i) {
        const std::string idx = std::to_string(i + 1);
        if (!std::isfinite(t.leading[i])) fail("leading term of equation " + idx);
        if (!std::isfinite(t.chiral[i])) fail("lambda term of equation " + idx);
        if (!std::isfinite(t.quadratic[i])) fail("quadratic term of equation " + idx);
        if (!std::isfinite(t.F[i])) fail("F" + idx);
        for (int j = 0; j < 4; ++j)
            if (!std::isfinite(t.T[i][j])) fail("T" + idx + std::to_string(j + 1));
    }
    fail("term");
}

}  // namespace

CoefficientMatrix eval_coefficient_matrix(const SourceContext& ctx) {
    const Denominators den = checked_denominators(ctx);
    CoefficientMatrix T{};
    std::array<double, 4> F{};
    fill_coefficients(ctx, den, T, F);
    return T;
}

std::array<double, 4> eval_forcing(const SourceContext& ctx) {
    const Denominators den = checked_denominators(ctx);
    CoefficientMatrix T{};
    std::array<double, 4> F{};
    fill_coefficients(ctx, den, T, F);
    return F;
}

SourceTerms eval_terms(const SourceContext& ctx) {
    const Denominators den = checked_denominators(ctx);
    SourceTerms t;
    fill_coefficients(ctx, den, t.T, t.F);

    const LevelState& L = ctx.level;
    const double tau = L.tau;
    const double U1 = ctx.U[0], U2 = ctx.U[1], U3 = ctx.U[2], U4 = ctx.U[3];
    // In the class the differences vanish to second order, so the quotients tend to zero on tau = 0.
    const double w1 = tau > 0.0 ? (U1 - U2) / tau : 0.0;
    const double w2 = tau > 0.0 ? (U3 - U4) / tau : 0.0;
    const double cp = L.c1, a = L.a, ap = L.a1, aa = a * ap, lam = ctx.lambda;

    t.leading = {0.5 * w1, -0.5 * w1, 0.5 * w2, -0.5 * w2};
    t.chiral = {lam * aa / (cp * den.plus) * w2, lam * aa / (cp * den.minus) * w2,
                -lam * ap / (a * cp * den.plus) * w1, -lam * ap / (a * cp * den.minus) * w1};
    const double q11 = w1 * (U1 - U2), q22 = a * a * w2 * (U3 - U4), q12 = w1 * (U3 - U4);
    t.quadratic = {(q11 - q22) / (4.0 * den.plus), (q11 - q22) / (4.0 * den.minus), q12 / (2.0 * den.plus),
                   q12 / (2.0 * den.minus)};
    check_finite(ctx, t);
    return t;
}

std::array<double, 4> assemble_rhs(const SourceTerms& t, const std::array<double, 4>& U, double tau) {
    std::array<double, 4> r{};
    for (int i = 0; i < 4; ++i) {
        double s = t.leading[i] + t.chiral[i] + t.quadratic[i] + t.F[i] * tau;
        for (int j = 0; j < 4; ++j) s += t.T[i][j] * U[j];
        r[i] = s;
    }
    return r;
}

SourceValues eval_rhs(const SourceContext& ctx) {
    const SourceTerms t = eval_terms(ctx);
    const double cp = ctx.level.c1, tau = ctx.tau();
    const double g = ctx.b.g(tau);
    SourceValues v;
    v.lambda_plus = -tau / (cp * (ctx.U[1] + g));
    v.lambda_minus = tau / (cp * (ctx.U[0] + g));
    v.rhs = assemble_rhs(t, ctx.U, tau);
    return v;
}

}  // namespace vwave
