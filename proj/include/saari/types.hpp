#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "saari/errors.hpp"

namespace saari {

using Complex = std::complex<double>;

inline double dot(Complex a, Complex b) { return a.real() * b.real() + a.imag() * b.imag(); }
inline double wedge(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

// Relative collision threshold: pairs closer than kCollisionEps times the
// configuration scale sqrt(I) count as collided.
inline constexpr double kCollisionEps = 1e-10;

struct Masses {
    double m1, m2, m3;

    Masses(double m1_, double m2_, double m3_) : m1(m1_), m2(m2_), m3(m3_) {
        if (!(m1 > 0 && m2 > 0 && m3 > 0)) throw ConfigError("masses must be positive");
    }

    double total() const { return m1 + m2 + m3; }

    // rescale factor between the shape variables zeta and eta
    double n() const { return (m1 + m2) * (m1 + m2) * m3 / (total() * m1 * m2); }
    double sqrt_n() const { return std::sqrt(n()); }
};

// A 2x2 Riemannian metric with its inverse and area density.
struct Metric2 {
    std::array<std::array<double, 2>, 2> g, ginv;
    double sqrt_det;
};

struct CartesianState {
    std::array<Complex, 3> q;
    std::array<Complex, 3> qdot;
};

struct ReducedState {
    double r = 0;
    double phi = 0;  // unreduced; winding stays observable
    Complex eta;
    double rdot = 0;
    double phidot = 0;
    Complex etadot;
};

}  // namespace saari
