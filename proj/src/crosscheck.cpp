#include "vwave/crosscheck.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "vwave/errors.hpp"
#include "vwave/substitution.hpp"

namespace vwave {

const FamilyDeviation& CrosscheckResult::worst() const {
    return *std::max_element(families.begin(), families.end(), [](const auto& a, const auto& b) {
        return std::max(a.max_rel, a.lambda_part) < std::max(b.max_rel, b.lambda_part);
    });
}

namespace {

using Vec4 = std::array<double, 4>;

struct Attribution {
    CoefficientMatrix dT{};  // d r_i / d U_j
    Vec4 dF{};               // (r_i - sum_j U_j d_j r_i) / tau
    Vec4 r{};
};

Attribution attribute(const SourceContext& base, const CoefficientProvider& provider) {
    auto residual = [&](const Vec4& U) {
        SourceContext c = base;
        c.U = U;
        const Vec4 direct = direct_substitution_rhs(c);
        const Vec4 assembled = assemble_rhs(provider(c), U, c.tau());
        Vec4 r{};
        for (int i = 0; i < 4; ++i) r[i] = direct[i] - assembled[i];
        return r;
    };
    Attribution at;
    at.r = residual(base.U);
    const double h = 1e-5;
    for (int j = 0; j < 4; ++j) {
        Vec4 up = base.U, dn = base.U;
        up[j] += h;
        dn[j] -= h;
        const Vec4 rp = residual(up), rm = residual(dn);
        for (int i = 0; i < 4; ++i) at.dT[i][j] = (rp[i] - rm[i]) / (2.0 * h);
    }
    for (int i = 0; i < 4; ++i) {
        double s = at.r[i];
        for (int j = 0; j < 4; ++j) s -= base.U[j] * at.dT[i][j];
        at.dF[i] = s / base.tau();
    }
    return at;
}

bool lambda_bearing(int family) {
    // T12, T21 and the first two forcings carry lambda through the second-order data.
    return family == 1 || family == 4 || family == 16 || family == 17;
}

}  // namespace

CrosscheckResult run_coefficient_crosscheck(const MaterialModel& model, const ScenarioData& data, ClassBounds bounds,
                                         double delta, const CrosscheckOptions& options,
                                         const CoefficientProvider& provider) {
    if (!(delta > 0.0)) throw Error(ErrorKind::Usage, "crosscheck needs delta > 0");
    const DerivedBoundary boundary(model, data);
    ScenarioData data0 = data;
    data0.lambda = 0.0;
    const DerivedBoundary boundary0(model, data0);
    const LineConstants line = line_constants(model, data.phi1);

    CrosscheckResult res;
    res.tolerance = options.tolerance;
    res.points = options.points;
    res.families.resize(20);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) res.families[4 * i + j].name = "T" + std::to_string(i + 1) + std::to_string(j + 1);
    for (int i = 0; i < 4; ++i) res.families[16 + i].name = "F" + std::to_string(i + 1);
    for (int f = 0; f < 20; ++f) res.families[f].lambda_bearing = lambda_bearing(f);

    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int accepted = 0;
    for (int attempt = 0; accepted < options.points; ++attempt) {
        if (attempt > 100 * options.points)
            throw Error(ErrorKind::ClassBreach, "crosscheck could not find admissible sample points; reduce delta");
        const double tau = delta * (1e-3 + (1.0 - 1e-3) * unit(rng));
        const double y = data.y_range.lo + data.y_range.length() * unit(rng);
        Vec4 U{};
        for (double& u : U) u = options.field_scale * tau * tau * (2.0 * unit(rng) - 1.0);

        SourceContext ctx;
        ctx.level = make_level(model, data.phi1, tau, options.eps_dd);
        ctx.line = line;
        ctx.b = boundary.at(y);
        ctx.U = U;
        ctx.lambda = data.lambda;
        ctx.bounds = bounds;
        SourceContext ctx0 = ctx;
        ctx0.b = boundary0.at(y);
        ctx0.lambda = 0.0;

        SourceTerms terms;
        try {
            terms = provider(ctx);
            provider(ctx0);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::ClassBreach) continue;
            throw;
        }
        ++accepted;

        const Attribution at = attribute(ctx, provider);
        const Attribution at0 = attribute(ctx0, provider);
        const Vec4 rhs = assemble_rhs(terms, U, tau);
        for (int i = 0; i < 4; ++i)
            res.equation_max_rel = std::max(res.equation_max_rel, std::abs(at.r[i]) / std::max(1.0, std::abs(rhs[i])));

        auto record = [&](int f, double impl, double dev, double dev0) {
            FamilyDeviation& fd = res.families[f];
            const double rel = std::abs(dev) / std::max(1.0, std::abs(impl));
            const double lam_rel = std::abs(dev - dev0) / std::max(1.0, std::abs(impl));
            fd.lambda_part = std::max(fd.lambda_part, lam_rel);
            if (rel >= fd.max_rel) {
                fd.max_rel = rel;
                fd.worst_tau = tau;
                fd.worst_y = y;
                fd.worst_U = U;
                fd.implemented = impl;
                fd.rederived = impl + dev;
            }
        };
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) record(4 * i + j, terms.T[i][j], at.dT[i][j], at0.dT[i][j]);
            record(16 + i, terms.F[i], at.dF[i], at0.dF[i]);
        }
    }
    for (const auto& f : res.families)
        if (!(f.max_rel <= res.tolerance) || !(f.lambda_part <= res.tolerance)) res.passed = false;
    return res;
}

}  // namespace vwave
