#pragma once

#include <array>
#include <cmath>
#include <functional>

namespace vwave {

/// Truncated Taylor expansion f(x0 + h) = sum_k c[k] h^k, k <= kOrder.
/// Arithmetic on jets propagates derivatives exactly through the truncation order.
class Jet {
public:
    static constexpr int kOrder = 4;
    using Coeffs = std::array<double, kOrder + 1>;

    constexpr Jet() : c_{} {}
    constexpr explicit Jet(const Coeffs& c) : c_(c) {}

    static constexpr Jet constant(double v) {
        Coeffs c{};
        c[0] = v;
        return Jet(c);
    }
    static constexpr Jet variable(double x) {
        Coeffs c{};
        c[0] = x;
        c[1] = 1.0;
        return Jet(c);
    }
    /// Build from plain derivatives f, f', f'', ... (missing orders are zero).
    static Jet from_derivatives(std::initializer_list<double> d);

    double value() const { return c_[0]; }
    double coeff(int k) const { return c_[k]; }
    double& coeff(int k) { return c_[k]; }
    /// k-th derivative at the expansion point.
    double derivative(int k) const;
    const Coeffs& coeffs() const { return c_; }

    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator*=(const Jet& o);
    Jet& operator/=(const Jet& o);

private:
    Coeffs c_;
};

Jet operator+(Jet a, const Jet& b);
Jet operator-(Jet a, const Jet& b);
Jet operator*(const Jet& a, const Jet& b);
Jet operator/(const Jet& a, const Jet& b);
Jet operator-(const Jet& a);
Jet operator*(double s, Jet a);
Jet operator+(double s, Jet a);

Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet sqrt(const Jet& a);
Jet pow(const Jet& a, int n);
Jet pow(const Jet& a, double p);

/// Jet of the derivative; the top coefficient is lost to truncation.
Jet differentiate(const Jet& a);

/// Series of h(g(x0 + s)) in s where h is expanded at g(x0) and g - g(x0) starts at order one.
Jet compose(const Jet& outer, const Jet& inner);

/// A scalar function returning its Taylor jet at the requested point.
using JetFunction = std::function<Jet(double)>;

}  // namespace vwave
