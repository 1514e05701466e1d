#pragma once

#include <array>

#include "vwave/hodograph.hpp"

namespace vwave {

/// Right-hand sides of the U-system built by inserting R1 = U1 + g, S1 = U2 + g, R2 = U3 + psi2 + g21 tau,
/// S2 = U4 + psi2 + g22 tau straight into the Riemann-invariant form of the hodograph system, moving the
/// boundary-data transport to the right. Shares no code with the coefficient tables; needs tau > 0.
std::array<double, 4> direct_substitution_rhs(const SourceContext& ctx);

}  // namespace vwave
