#pragma once

#include "saari/field.hpp"

// Two-variable forward-mode dual numbers carrying value, gradient and Hessian.
// Evaluating f(Dual2::var_x(x), Dual2::var_y(y)) yields f and its partials up
// to second order.  The component type T is itself a field (double, complex,
// Laurent series, or another Dual2 for nested derivatives).
namespace saari {

template <class T>
struct Dual2 {
    T v{}, dx{}, dy{}, dxx{}, dxy{}, dyy{};

    Dual2() = default;
    Dual2(const T& value) : v(value) {}
    template <class U = T, class = std::enable_if_t<!std::is_same_v<U, double>>>
    Dual2(double value) : v(value) {}

    static Dual2 var_x(const T& value) {
        Dual2 d(value);
        d.dx = T(1);
        return d;
    }
    static Dual2 var_y(const T& value) {
        Dual2 d(value);
        d.dy = T(1);
        return d;
    }
    static Dual2 constant(const T& value) { return Dual2(value); }
};

template <class T>
Dual2<T> operator+(const Dual2<T>& a, const Dual2<T>& b) {
    Dual2<T> r;
    r.v = a.v + b.v;
    r.dx = a.dx + b.dx;
    r.dy = a.dy + b.dy;
    r.dxx = a.dxx + b.dxx;
    r.dxy = a.dxy + b.dxy;
    r.dyy = a.dyy + b.dyy;
    return r;
}

template <class T>
Dual2<T> operator-(const Dual2<T>& a, const Dual2<T>& b) {
    Dual2<T> r;
    r.v = a.v - b.v;
    r.dx = a.dx - b.dx;
    r.dy = a.dy - b.dy;
    r.dxx = a.dxx - b.dxx;
    r.dxy = a.dxy - b.dxy;
    r.dyy = a.dyy - b.dyy;
    return r;
}

template <class T>
Dual2<T> operator-(const Dual2<T>& a) {
    Dual2<T> r;
    r.v = -a.v;
    r.dx = -a.dx;
    r.dy = -a.dy;
    r.dxx = -a.dxx;
    r.dxy = -a.dxy;
    r.dyy = -a.dyy;
    return r;
}

template <class T>
Dual2<T> operator*(const Dual2<T>& a, const Dual2<T>& b) {
    Dual2<T> r;
    r.v = a.v * b.v;
    r.dx = a.dx * b.v + a.v * b.dx;
    r.dy = a.dy * b.v + a.v * b.dy;
    r.dxx = a.dxx * b.v + a.dx * b.dx + a.dx * b.dx + a.v * b.dxx;
    r.dxy = a.dxy * b.v + a.dx * b.dy + a.dy * b.dx + a.v * b.dxy;
    r.dyy = a.dyy * b.v + a.dy * b.dy + a.dy * b.dy + a.v * b.dyy;
    return r;
}

// Composition with a unary g given g(f), g'(f), g''(f).
template <class T>
Dual2<T> compose(const Dual2<T>& f, const T& g0, const T& g1, const T& g2) {
    Dual2<T> r;
    r.v = g0;
    r.dx = g1 * f.dx;
    r.dy = g1 * f.dy;
    r.dxx = g2 * f.dx * f.dx + g1 * f.dxx;
    r.dxy = g2 * f.dx * f.dy + g1 * f.dxy;
    r.dyy = g2 * f.dy * f.dy + g1 * f.dyy;
    return r;
}

template <class T>
Dual2<T> inv(const Dual2<T>& a) {
    T u = T(1) / a.v;
    T u2 = u * u;
    return compose(a, u, -u2, (T(2) * u) * u2);
}

template <class T>
Dual2<T> operator/(const Dual2<T>& a, const Dual2<T>& b) {
    return a * inv(b);
}

template <class T>
Dual2<T> sqrt(const Dual2<T>& a) {
    T s = sqrt(a.v);
    T g1 = T(1) / (T(2) * s);
    T g2 = -g1 / (T(2) * a.v);
    return compose(a, s, g1, g2);
}

template <class T>
Dual2<T> pow_int(const Dual2<T>& a, int n) {
    T g0 = pow_int(a.v, n);
    T g1 = T(n) * pow_int(a.v, n - 1);
    T g2 = T(n) * T(n - 1) * pow_int(a.v, n - 2);
    return compose(a, g0, g1, g2);
}

template <class T>
Dual2<T> pow_real(const Dual2<T>& a, double p) {
    if (is_integer(p)) return pow_int(a, static_cast<int>(p));
    T g0 = pow_real(a.v, p);
    T g1 = T(p) * pow_real(a.v, p - 1);
    T g2 = T(p) * T(p - 1) * pow_real(a.v, p - 2);
    return compose(a, g0, g1, g2);
}

// Mixed arithmetic with plain scalars.
template <class T>
Dual2<T> operator+(const Dual2<T>& a, double b) { return a + Dual2<T>(b); }
template <class T>
Dual2<T> operator+(double a, const Dual2<T>& b) { return Dual2<T>(a) + b; }
template <class T>
Dual2<T> operator-(const Dual2<T>& a, double b) { return a - Dual2<T>(b); }
template <class T>
Dual2<T> operator-(double a, const Dual2<T>& b) { return Dual2<T>(a) - b; }
template <class T>
Dual2<T> operator*(const Dual2<T>& a, double b) { return a * Dual2<T>(b); }
template <class T>
Dual2<T> operator*(double a, const Dual2<T>& b) { return Dual2<T>(a) * b; }
template <class T>
Dual2<T> operator/(const Dual2<T>& a, double b) { return a / Dual2<T>(b); }
template <class T>
Dual2<T> operator/(double a, const Dual2<T>& b) { return Dual2<T>(a) / b; }

template <class T>
struct field_traits<Dual2<T>> {
    using real_type = typename field_traits<T>::real_type;
};

}  // namespace saari
