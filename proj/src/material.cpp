#include "vwave/material.hpp"

#include <cmath>

#include "vwave/errors.hpp"
#include "vwave/expression.hpp"

namespace vwave {

MaterialModel::MaterialModel(std::string name, JetFunction wave_speed, JetFunction coupling, Interval u_domain)
    : name_(std::move(name)), c_(std::move(wave_speed)), a_(std::move(coupling)), u_domain_(u_domain) {
    if (!(u_domain_.hi > u_domain_.lo))
        throw Error(ErrorKind::Usage, "material '" + name_ + "': u_domain must satisfy lo < hi");
}

namespace {
Jet sine_jet(double u, double scale, double shift) {
    double s = std::sin(u), c = std::cos(u);
    return Jet::from_derivatives({shift + scale * s, scale * c, -scale * s, -scale * c, scale * s});
}
}  // namespace

MaterialModel linear_material(double shift, Interval u_domain) {
    return MaterialModel(
        "linear", [](double u) { return Jet::from_derivatives({-u, -1.0}); },
        [shift](double u) { return sine_jet(u, 1.0, shift); }, u_domain);
}

MaterialModel saxton_trig_material(double k1, double shift, Interval u_domain) {
    if (!(k1 > 0.0)) throw Error(ErrorKind::Usage, "saxton-trig preset: k1 must be positive");
    double r = std::sqrt(k1);
    return MaterialModel(
        "saxton-trig", [r](double u) { return sine_jet(u, -r, 0.0); },
        [shift](double u) { return sine_jet(u, 1.0, shift); }, u_domain);
}

MaterialModel custom_material(const std::string& c_expr, const std::string& a_expr, Interval u_domain) {
    auto c = Expression::parse(c_expr, "u");
    auto a = Expression::parse(a_expr, "u");
    return MaterialModel("custom", c.as_function(), a.as_function(), u_domain);
}

}  // namespace vwave
