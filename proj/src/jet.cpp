#include "vwave/jet.hpp"

namespace vwave {

namespace {
constexpr int N = Jet::kOrder;

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}
}  // namespace

Jet Jet::from_derivatives(std::initializer_list<double> d) {
    Coeffs c{};
    int k = 0;
    for (double v : d) {
        if (k > N) break;
        c[k] = v / factorial(k);
        ++k;
    }
    return Jet(c);
}

double Jet::derivative(int k) const { return c_[k] * factorial(k); }

Jet& Jet::operator+=(const Jet& o) {
    for (int k = 0; k <= N; ++k) c_[k] += o.c_[k];
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    for (int k = 0; k <= N; ++k) c_[k] -= o.c_[k];
    return *this;
}

Jet& Jet::operator*=(const Jet& o) {
    *this = *this * o;
    return *this;
}

Jet& Jet::operator/=(const Jet& o) {
    *this = *this / o;
    return *this;
}

Jet operator+(Jet a, const Jet& b) { return a += b; }
Jet operator-(Jet a, const Jet& b) { return a -= b; }

Jet operator*(const Jet& a, const Jet& b) {
    Jet::Coeffs r{};
    for (int k = 0; k <= N; ++k)
        for (int i = 0; i <= k; ++i) r[k] += a.coeff(i) * b.coeff(k - i);
    return Jet(r);
}

Jet operator/(const Jet& a, const Jet& b) {
    Jet::Coeffs q{};
    for (int k = 0; k <= N; ++k) {
        double s = a.coeff(k);
        for (int i = 1; i <= k; ++i) s -= b.coeff(i) * q[k - i];
        q[k] = s / b.coeff(0);
    }
    return Jet(q);
}

Jet operator-(const Jet& a) {
    Jet::Coeffs r = a.coeffs();
    for (double& v : r) v = -v;
    return Jet(r);
}

Jet operator*(double s, Jet a) {
    for (int k = 0; k <= N; ++k) a.coeff(k) *= s;
    return a;
}

Jet operator+(double s, Jet a) {
    a.coeff(0) += s;
    return a;
}

namespace {
void sin_cos(const Jet& a, Jet::Coeffs& s, Jet::Coeffs& c) {
    s[0] = std::sin(a.value());
    c[0] = std::cos(a.value());
    for (int k = 1; k <= N; ++k) {
        double ss = 0.0, cc = 0.0;
        for (int i = 1; i <= k; ++i) {
            ss += i * a.coeff(i) * c[k - i];
            cc += i * a.coeff(i) * s[k - i];
        }
        s[k] = ss / k;
        c[k] = -cc / k;
    }
}
}  // namespace

Jet sin(const Jet& a) {
    Jet::Coeffs s{}, c{};
    sin_cos(a, s, c);
    return Jet(s);
}

Jet cos(const Jet& a) {
    Jet::Coeffs s{}, c{};
    sin_cos(a, s, c);
    return Jet(c);
}

Jet exp(const Jet& a) {
    Jet::Coeffs e{};
    e[0] = std::exp(a.value());
    for (int k = 1; k <= N; ++k) {
        double s = 0.0;
        for (int i = 1; i <= k; ++i) s += i * a.coeff(i) * e[k - i];
        e[k] = s / k;
    }
    return Jet(e);
}

Jet log(const Jet& a) {
    Jet::Coeffs l{};
    l[0] = std::log(a.value());
    for (int k = 1; k <= N; ++k) {
        double s = 0.0;
        for (int i = 1; i < k; ++i) s += i * l[i] * a.coeff(k - i);
        l[k] = (a.coeff(k) - s / k) / a.value();
    }
    return Jet(l);
}

Jet sqrt(const Jet& a) {
    Jet::Coeffs r{};
    r[0] = std::sqrt(a.value());
    for (int k = 1; k <= N; ++k) {
        double s = 0.0;
        for (int i = 1; i < k; ++i) s += r[i] * r[k - i];
        r[k] = (a.coeff(k) - s) / (2.0 * r[0]);
    }
    return Jet(r);
}

Jet pow(const Jet& a, int n) {
    if (n < 0) return Jet::constant(1.0) / pow(a, -n);
    Jet result = Jet::constant(1.0);
    Jet base = a;
    while (n > 0) {
        if (n & 1) result = result * base;
        base = base * base;
        n >>= 1;
    }
    return result;
}

Jet pow(const Jet& a, double p) {
    if (p == std::floor(p) && std::abs(p) <= 64.0) return pow(a, static_cast<int>(p));
    Jet::Coeffs y{};
    y[0] = std::pow(a.value(), p);
    for (int k = 1; k <= N; ++k) {
        double s = 0.0;
        for (int i = 1; i <= k; ++i) s += (p * i - (k - i)) * a.coeff(i) * y[k - i];
        y[k] = s / (k * a.value());
    }
    return Jet(y);
}

Jet differentiate(const Jet& a) {
    Jet::Coeffs r{};
    for (int k = 0; k < N; ++k) r[k] = (k + 1) * a.coeff(k + 1);
    return Jet(r);
}

Jet compose(const Jet& outer, const Jet& inner) {
    Jet w = inner;
    w.coeff(0) = 0.0;
    Jet result = Jet::constant(outer.coeff(0));
    Jet wk = Jet::constant(1.0);
    for (int k = 1; k <= N; ++k) {
        wk = wk * w;
        result += outer.coeff(k) * wk;
    }
    return result;
}

}  // namespace vwave
