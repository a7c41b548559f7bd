#pragma once

#include <cmath>
#include <complex>
#include <cstdlib>
#include <type_traits>

#include "saari/errors.hpp"

// Generic scalar-field helpers.  Shape functions (mu and everything derived
// from it) are written against this contract so the same expression evaluates
// on doubles, complex numbers, second-order duals and Laurent series.
namespace saari {

using std::sqrt;

// x^n for integer n by binary exponentiation.  Works for any field type that
// has *, / and a unit.  Specialised types (Laurent) provide their own overload.
template <class T>
T pow_int(const T& x, int n) {
    if (n < 0) return T(1) / pow_int(x, -n);
    T acc(1);
    T base = x;
    while (n > 0) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

inline double pow_int(double x, int n) { return std::pow(x, n); }

// x^a for real a.  Plain floating types use std::pow; structured types
// (duals, series) provide overloads restricted to the exponents they support.
inline double pow_real(double x, double a) { return std::pow(x, a); }
inline std::complex<double> pow_real(const std::complex<double>& x, double a) {
    return std::pow(x, a);
}

inline bool is_integer(double a) { return a == std::floor(a); }
inline bool is_half_integer(double a) { return is_integer(2 * a) && !is_integer(a); }

template <class T>
struct field_traits {
    using real_type = T;
};

template <class R>
struct field_traits<std::complex<R>> {
    using real_type = R;
};

}  // namespace saari
