#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vwave/jet.hpp"

namespace vwave {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double v) const { return v >= lo && v <= hi; }
    double length() const { return hi - lo; }
};

/// Wave speed c(u) and coupling amplitude a(u) of the director model, both
/// available as Taylor jets up to fourth order.
class MaterialModel {
public:
    MaterialModel(std::string name, JetFunction wave_speed, JetFunction coupling, Interval u_domain);

    const std::string& name() const { return name_; }
    const Interval& u_domain() const { return u_domain_; }

    Jet c_jet(double u) const { return c_(u); }
    Jet a_jet(double u) const { return a_(u); }
    double c(double u) const { return c_(u).value(); }
    double a(double u) const { return a_(u).value(); }

    /// Optional declared lower bound; validation checks it against the sample.
    std::optional<double> declared_m0;

private:
    std::string name_;
    JetFunction c_;
    JetFunction a_;
    Interval u_domain_;
};

/// c(u) = -u, a(u) = shift + sin u.
MaterialModel linear_material(double shift = 2.0, Interval u_domain = {-10.0, 10.0});

/// c(u) = -sqrt(k1) sin u, a(u) = sin u + shift, on a branch where c' stays negative.
MaterialModel saxton_trig_material(double k1 = 1.0, double shift = 2.0,
                                   Interval u_domain = {-1.0471975511965976, 1.0471975511965976});

/// Both functions given as expressions in the variable u.
MaterialModel custom_material(const std::string& c_expr, const std::string& a_expr, Interval u_domain);

}  // namespace vwave
