#pragma once

#include <algorithm>
#include <climits>
#include <limits>
#include <vector>

#include "saari/field.hpp"

namespace saari {

// Number of coefficients retained past the leading one in series arithmetic.
// Thread-local so verification runs can widen it without touching callers.
inline thread_local int laurent_cap = 24;

namespace detail {
template <class C>
double coeff_mag(const C& c) {
    using std::abs;
    return static_cast<double>(abs(c));
}

template <class C>
double trim_tol() {
    using R = typename field_traits<C>::real_type;
    double eps = static_cast<double>(std::numeric_limits<R>::epsilon());
    return std::pow(eps, 0.75);
}
}  // namespace detail

// Truncated Laurent series sum_{k >= k0} c_k rho^k + O(rho^kmax).
// kmax == kExact marks a finite polynomial known exactly.
template <class C>
class Laurent {
   public:
    static constexpr int kExact = INT_MAX / 2;

    int k0 = 0;
    int kmax = kExact;
    std::vector<C> coef;  // exponents k0 .. k0 + coef.size() - 1

    Laurent() = default;
    Laurent(const C& c) {
        if (detail::coeff_mag(c) != 0.0) coef = {c};
    }
    template <class U = C, class = std::enable_if_t<!std::is_same_v<U, double>>>
    Laurent(double c) : Laurent(C(c)) {}

    static Laurent variable() { return monomial(C(1), 1); }
    static Laurent monomial(const C& c, int k) {
        Laurent s;
        s.k0 = k;
        s.coef = {c};
        return s;
    }

    bool is_zero() const { return coef.empty(); }
    int length() const { return static_cast<int>(coef.size()); }

    // Coefficient of rho^k (zero outside the stored window; the window is
    // only trusted below kmax).
    C coeff(int k) const {
        if (k < k0 || k >= k0 + length()) return C(0);
        return coef[k - k0];
    }

    double max_mag() const {
        double m = 0;
        for (const auto& c : coef) m = std::max(m, detail::coeff_mag(c));
        return m;
    }

    // Drop numerically negligible leading/trailing coefficients and clamp the
    // retained window to laurent_cap terms past the leading one.
    Laurent trimmed(double rel_tol = detail::trim_tol<C>()) const {
        Laurent r = *this;
        double tol = rel_tol * r.max_mag();
        int lead = 0;
        while (lead < r.length() && detail::coeff_mag(r.coef[lead]) <= tol) ++lead;
        if (lead == r.length()) {
            r.coef.clear();
            return r;
        }
        r.coef.erase(r.coef.begin(), r.coef.begin() + lead);
        r.k0 += lead;
        int tail = r.length();
        while (tail > 0 && detail::coeff_mag(r.coef[tail - 1]) == 0.0) --tail;
        r.coef.resize(tail);
        if (r.length() > laurent_cap) {
            r.coef.resize(laurent_cap);
            r.kmax = std::min(r.kmax, r.k0 + laurent_cap);
        }
        return r;
    }

    int leading_exponent() const {
        Laurent t = trimmed();
        if (t.is_zero()) throw PrecisionExhausted("leading exponent of (numerically) zero series");
        return t.k0;
    }

    C leading_coeff() const {
        Laurent t = trimmed();
        if (t.is_zero()) throw PrecisionExhausted("leading coefficient of (numerically) zero series");
        return t.coef.front();
    }

    Laurent derivative() const {
        Laurent r;
        r.kmax = (kmax == kExact) ? kExact : kmax - 1;
        r.k0 = k0 - 1;
        r.coef.resize(coef.size());
        for (int i = 0; i < length(); ++i) r.coef[i] = C(k0 + i) * coef[i];
        return r.clamped();
    }

    // Substitute rho = sigma^2: exponents double.
    Laurent exponents_doubled() const {
        Laurent r;
        r.k0 = 2 * k0;
        r.kmax = (kmax == kExact) ? kExact : 2 * kmax - 1;
        r.coef.resize(coef.empty() ? 0 : 2 * coef.size() - 1, C(0));
        for (int i = 0; i < length(); ++i) r.coef[2 * i] = coef[i];
        return r;
    }

    template <class X>
    X evaluate(const X& rho) const {
        X acc(0);
        for (int i = length() - 1; i >= 0; --i) acc = acc * rho + X(coef[i]);
        return acc * pow_int(rho, k0);
    }

    Laurent clamped() const {
        Laurent r = *this;
        if (r.length() > laurent_cap) {
            r.coef.resize(laurent_cap);
            r.kmax = std::min(r.kmax, r.k0 + laurent_cap);
        }
        // stored window must not extend past kmax
        if (r.kmax != kExact && r.k0 + r.length() > r.kmax) {
            int keep = std::max(0, r.kmax - r.k0);
            r.coef.resize(keep);
        }
        return r;
    }
};

template <class C>
Laurent<C> operator+(const Laurent<C>& a, const Laurent<C>& b) {
    if (a.is_zero() && a.kmax == Laurent<C>::kExact) return b;
    if (b.is_zero() && b.kmax == Laurent<C>::kExact) return a;
    Laurent<C> r;
    r.kmax = std::min(a.kmax, b.kmax);
    if (a.is_zero() && b.is_zero()) return r;
    int lo = a.is_zero() ? b.k0 : (b.is_zero() ? a.k0 : std::min(a.k0, b.k0));
    int hi = std::max(a.is_zero() ? lo : a.k0 + a.length(), b.is_zero() ? lo : b.k0 + b.length());
    if (r.kmax != Laurent<C>::kExact) hi = std::min(hi, r.kmax);
    r.k0 = lo;
    r.coef.assign(std::max(0, hi - lo), C(0));
    for (int k = lo; k < hi; ++k) r.coef[k - lo] = a.coeff(k) + b.coeff(k);
    return r.clamped();
}

template <class C>
Laurent<C> operator-(const Laurent<C>& a) {
    Laurent<C> r = a;
    for (auto& c : r.coef) c = -c;
    return r;
}

template <class C>
Laurent<C> operator-(const Laurent<C>& a, const Laurent<C>& b) {
    return a + (-b);
}

template <class C>
Laurent<C> operator*(const Laurent<C>& a0, const Laurent<C>& b0) {
    Laurent<C> a = a0.trimmed(), b = b0.trimmed();
    Laurent<C> r;
    if (a.is_zero() || b.is_zero()) {
        // O-bound of a zero factor still propagates
        long km = Laurent<C>::kExact;
        if (a.kmax != Laurent<C>::kExact) km = std::min<long>(km, long(a.kmax) + (b.is_zero() ? 0 : b.k0));
        if (b.kmax != Laurent<C>::kExact) km = std::min<long>(km, long(b.kmax) + (a.is_zero() ? 0 : a.k0));
        r.kmax = static_cast<int>(std::min<long>(km, Laurent<C>::kExact));
        return r;
    }
    long km = Laurent<C>::kExact;
    if (a.kmax != Laurent<C>::kExact) km = std::min<long>(km, long(a.kmax) + b.k0);
    if (b.kmax != Laurent<C>::kExact) km = std::min<long>(km, long(b.kmax) + a.k0);
    r.kmax = static_cast<int>(std::min<long>(km, Laurent<C>::kExact));
    r.k0 = a.k0 + b.k0;
    int n = a.length() + b.length() - 1;
    if (r.kmax != Laurent<C>::kExact) n = std::min(n, r.kmax - r.k0);
    n = std::min(n, laurent_cap);
    if (n <= 0) {
        r.coef.clear();
        return r;
    }
    r.coef.assign(n, C(0));
    for (int i = 0; i < a.length(); ++i) {
        if (i >= n) break;
        for (int j = 0; j < b.length() && i + j < n; ++j) r.coef[i + j] += a.coef[i] * b.coef[j];
    }
    if (n < a.length() + b.length() - 1)
        r.kmax = std::min(r.kmax, r.k0 + n);
    return r;
}

template <class C>
Laurent<C> inv(const Laurent<C>& a0) {
    Laurent<C> a = a0.trimmed();
    if (a.is_zero()) {
        if (a.kmax == Laurent<C>::kExact) throw DivideByZeroSeries();
        throw PrecisionExhausted("inverse of a series whose leading term is below the O-bound");
    }
    int rel = laurent_cap;
    if (a.kmax != Laurent<C>::kExact) rel = std::min(rel, a.kmax - a.k0);
    if (rel <= 0) throw PrecisionExhausted("no usable orders left in series inverse");
    // a = c0 rho^{k0} (1 + u); invert the unit tail by the convolution recurrence
    Laurent<C> r;
    r.k0 = -a.k0;
    r.kmax = (a.kmax == Laurent<C>::kExact && a.length() == 1) ? Laurent<C>::kExact : r.k0 + rel;
    r.coef.assign(rel, C(0));
    C c0inv = C(1) / a.coef[0];
    r.coef[0] = c0inv;
    for (int j = 1; j < rel; ++j) {
        C s(0);
        for (int i = 1; i <= j && i < a.length(); ++i) s += a.coef[i] * r.coef[j - i];
        r.coef[j] = -c0inv * s;
    }
    return r;
}

template <class C>
Laurent<C> operator/(const Laurent<C>& a, const Laurent<C>& b) {
    return a * inv(b);
}

template <class C>
Laurent<C> sqrt(const Laurent<C>& a0) {
    using std::sqrt;
    Laurent<C> a = a0.trimmed();
    if (a.is_zero()) {
        if (a.kmax == Laurent<C>::kExact) return a;
        throw PrecisionExhausted("sqrt of a series whose leading term is below the O-bound");
    }
    if (a.k0 % 2 != 0) throw SqrtBranch();
    int rel = laurent_cap;
    if (a.kmax != Laurent<C>::kExact) rel = std::min(rel, a.kmax - a.k0);
    if (rel <= 0) throw PrecisionExhausted("no usable orders left in series sqrt");
    Laurent<C> r;
    r.k0 = a.k0 / 2;
    r.kmax = r.k0 + rel;
    r.coef.assign(rel, C(0));
    C s0 = sqrt(a.coef[0]);  // principal branch on the leading coefficient
    r.coef[0] = s0;
    C half_inv_s0 = C(1) / (C(2) * s0);
    for (int j = 1; j < rel; ++j) {
        C s = (j < a.length()) ? a.coef[j] : C(0);
        for (int i = 1; i < j; ++i) s -= r.coef[i] * r.coef[j - i];
        r.coef[j] = s * half_inv_s0;
    }
    return r;
}

template <class C>
Laurent<C> pow_int(const Laurent<C>& x, int n) {
    if (n < 0) return inv(pow_int(x, -n));
    Laurent<C> acc(C(1));
    Laurent<C> base = x;
    int m = n;
    while (m > 0) {
        if (m & 1) acc = acc * base;
        base = base * base;
        m >>= 1;
    }
    return acc;
}

template <class C>
Laurent<C> pow_real(const Laurent<C>& x, double p) {
    if (is_integer(p)) return pow_int(x, static_cast<int>(p));
    if (is_half_integer(p)) return sqrt(pow_int(x, static_cast<int>(2 * p)));
    throw PrecisionExhausted("series pow supports only integer and half-integer exponents");
}

template <class C>
Laurent<C> operator+(const Laurent<C>& a, double b) { return a + Laurent<C>(C(b)); }
template <class C>
Laurent<C> operator+(double a, const Laurent<C>& b) { return Laurent<C>(C(a)) + b; }
template <class C>
Laurent<C> operator-(const Laurent<C>& a, double b) { return a - Laurent<C>(C(b)); }
template <class C>
Laurent<C> operator-(double a, const Laurent<C>& b) { return Laurent<C>(C(a)) - b; }
template <class C>
Laurent<C> operator*(const Laurent<C>& a, double b) { return a * Laurent<C>(C(b)); }
template <class C>
Laurent<C> operator*(double a, const Laurent<C>& b) { return Laurent<C>(C(a)) * b; }
template <class C>
Laurent<C> operator/(const Laurent<C>& a, double b) { return a * Laurent<C>(C(1.0 / b)); }
template <class C>
Laurent<C> operator/(double a, const Laurent<C>& b) { return Laurent<C>(C(a)) * inv(b); }

template <class C>
struct field_traits<Laurent<C>> {
    using real_type = typename field_traits<C>::real_type;
};

}  // namespace saari
