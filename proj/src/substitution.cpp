#include "vwave/substitution.hpp"

#include "vwave/errors.hpp"

namespace vwave {

std::array<double, 4> direct_substitution_rhs(const SourceContext& ctx) {
    const double tau = ctx.tau();
    if (!(tau > 0.0)) throw Error(ErrorKind::Usage, "direct substitution needs tau > 0");
    const BoundaryPoint& b = ctx.b;
    const double cp = ctx.level.c1, a = ctx.level.a, ap = ctx.level.a1, lam = ctx.lambda;

    const double R1 = ctx.U[0] + b.psi1 + b.g11 * tau;
    const double S1 = ctx.U[1] + b.psi1 + b.g11 * tau;
    const double R2 = ctx.U[2] + b.psi2 + b.g21 * tau;
    const double S2 = ctx.U[3] + b.psi2 + b.g22 * tau;
    const double d1 = (R1 - S1) / tau, d2 = (R2 - S2) / tau;

    // d/dtau of (R1, S1, R2, S2) along the two characteristic directions.
    const double r1 = (R1 + S1) / (4.0 * S1) * d1 + lam * a * ap / (cp * S1) * d2 - a * a / (4.0 * S1) * d2 * (R2 - S2) -
                      a * ap / (cp * S1) * R2 * S2;
    const double r2 = -(R1 + S1) / (4.0 * R1) * d1 + lam * a * ap / (cp * R1) * d2 - a * a / (4.0 * R1) * d2 * (R2 - S2) -
                      a * ap / (cp * R1) * R2 * S2;
    const double r3 = R1 / (2.0 * S1) * d2 - lam * ap / (a * cp * S1) * d1 + ap / (a * cp * S1) * (R1 * S2 + R2 * S1);
    const double r4 = -S1 / (2.0 * R1) * d2 - lam * ap / (a * cp * R1) * d1 + ap / (a * cp * R1) * (R1 * S2 + R2 * S1);

    // Speeds -tau/(c' S1) and tau/(c' R1) carry the y-transport of the boundary terms.
    const double sp = tau / (cp * S1), sm = tau / (cp * R1);
    return {
        r1 - b.g11 + sp * (b.dpsi1 + b.dg11 * tau),
        r2 - b.g11 - sm * (b.dpsi1 + b.dg11 * tau),
        r3 - b.g21 + sp * (b.dpsi2 + b.dg21 * tau),
        r4 - b.g22 - sm * (b.dpsi2 + b.dg22 * tau),
    };
}

}  // namespace vwave
