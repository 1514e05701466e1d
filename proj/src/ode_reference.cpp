#include "vwave/ode_reference.hpp"

#include <boost/numeric/odeint.hpp>

#include "vwave/errors.hpp"
#include "vwave/hodograph.hpp"
#include "vwave/substitution.hpp"

namespace vwave {

std::vector<std::array<double, 4>> y_independent_reference(const MaterialModel& model, const ScenarioData& data,
                                                           const std::vector<double>& taus,
                                                           const OdeReferenceOptions& options) {
    namespace odeint = boost::numeric::odeint;
    using State = std::array<double, 4>;
    for (std::size_t i = 1; i < taus.size(); ++i)
        if (!(taus[i] > taus[i - 1])) throw Error(ErrorKind::Usage, "reference: sample times must increase");

    const DerivedBoundary boundary(model, data);
    const BoundaryPoint b = boundary.at(data.y_range.lo);
    const LineConstants line = line_constants(model, data.phi1);
    auto rhs = [&](const State& U, State& dU, double tau) {
        SourceContext ctx;
        ctx.level = make_level_direct(model, data.phi1, tau);
        ctx.line = line;
        ctx.b = b;
        ctx.U = U;
        ctx.lambda = data.lambda;
        dU = direct_substitution_rhs(ctx);
    };

    std::vector<State> out;
    out.reserve(taus.size());
    State U{};
    double t = options.tau_start;
    auto stepper = odeint::make_dense_output(options.abs_tol, options.rel_tol, odeint::runge_kutta_dopri5<State>());
    for (double target : taus) {
        if (target <= t) {
            // U vanishes to second order on the degenerate line.
            out.push_back(State{});
            continue;
        }
        odeint::integrate_adaptive(stepper, rhs, U, t, target, 1e-3 * (target - t));
        t = target;
        out.push_back(U);
    }
    return out;
}

}  // namespace vwave
