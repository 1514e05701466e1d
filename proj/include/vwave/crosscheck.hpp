#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "vwave/hodograph.hpp"

namespace vwave {

/// Produces the coefficient tables under test. Defaults to eval_terms; tests substitute corrupted versions.
using CoefficientProvider = std::function<SourceTerms(const SourceContext&)>;

struct FamilyDeviation {
    std::string name;  // T11 .. T44, F1 .. F4
    bool lambda_bearing = false;
    double max_rel = 0.0;
    double lambda_part = 0.0;  // same measure on the lambda-dependent part of the mismatch
    double worst_tau = 0.0;
    double worst_y = 0.0;
    std::array<double, 4> worst_U{};
    double implemented = 0.0;
    double rederived = 0.0;
};

struct CrosscheckResult {
    std::vector<FamilyDeviation> families;  // 16 T entries then 4 F entries
    double equation_max_rel = 0.0;
    double tolerance = 1e-6;
    int points = 0;
    bool passed = true;

    const FamilyDeviation& worst() const;
};

struct CrosscheckOptions {
    int points = 100;
    std::uint64_t seed = 20240611;
    double tolerance = 1e-6;
    /// |U_i| <= field_scale * tau^2 at the sampled points.
    double field_scale = 1.0;
    double eps_dd = kDefaultEpsDD;
};

/// Compares every coefficient family with the direct substitution: the implied coefficient
/// T_ij + d r_i / d U_j and forcing from the residual r = direct - assembled, by central differences in U.
CrosscheckResult run_coefficient_crosscheck(const MaterialModel& model, const ScenarioData& data, ClassBounds bounds,
                                         double delta, const CrosscheckOptions& options = {},
                                         const CoefficientProvider& provider = eval_terms);

}  // namespace vwave
