#pragma once

#include <array>
#include <vector>

#include "vwave/material.hpp"
#include "vwave/scenario.hpp"

namespace vwave {

struct OdeReferenceOptions {
    double tau_start = 1e-9;  // start of integration from U = 0 (U = O(tau^2))
    double abs_tol = 1e-14;
    double rel_tol = 1e-12;
};

/// For y-independent data the U-system reduces to four ODEs in tau. Integrates the directly
/// substituted form with an adaptive Dormand-Prince scheme and samples it at `taus`
/// (ascending, tau = 0 allowed).
std::vector<std::array<double, 4>> y_independent_reference(const MaterialModel& model, const ScenarioData& data,
                                                           const std::vector<double>& taus,
                                                           const OdeReferenceOptions& options = {});

}  // namespace vwave
