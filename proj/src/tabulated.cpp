#include <cmath>
#include <memory>
#include <unsupported/Eigen/Splines>

#include "vwave/errors.hpp"
#include "vwave/scenario.hpp"

namespace vwave {

JetFunction tabulated_function(const std::vector<double>& x, const std::vector<double>& v) {
    using Spline1 = Eigen::Spline<double, 1>;
    constexpr int kDegree = 5;
    if (x.size() != v.size() || x.size() < kDegree + 1)
        throw Error(ErrorKind::Usage, "tabulated data needs matching x/value arrays with at least 6 entries");
    for (std::size_t i = 1; i < x.size(); ++i)
        if (!(x[i] > x[i - 1])) throw Error(ErrorKind::Usage, "tabulated x values must be strictly increasing");

    const auto n = static_cast<Eigen::Index>(x.size());
    const double x0 = x.front(), len = x.back() - x.front();
    Eigen::RowVectorXd pts(n), params(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        pts(i) = v[static_cast<std::size_t>(i)];
        params(i) = (x[static_cast<std::size_t>(i)] - x0) / len;
    }
    auto spline = std::make_shared<const Spline1>(Eigen::SplineFitting<Spline1>::Interpolate(pts, kDegree, params));
    const double slack = 1e-9 * len;
    return [spline, x0, len, slack](double xv) {
        if (xv < x0 - slack || xv > x0 + len + slack)
            throw Error(ErrorKind::Validation, "tabulated data evaluated outside its table range");
        double s = std::clamp((xv - x0) / len, 0.0, 1.0);
        auto d = spline->derivatives(s, Jet::kOrder);
        Jet::Coeffs c{};
        double scale = 1.0, fact = 1.0;
        for (int k = 0; k <= Jet::kOrder; ++k) {
            if (k > 0) {
                scale /= len;
                fact *= k;
            }
            c[static_cast<std::size_t>(k)] = d(0, k) * scale / fact;
        }
        return Jet(c);
    };
}

}  // namespace vwave
