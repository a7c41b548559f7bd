#pragma once

#include <utility>

#include "saari/field.hpp"
#include "saari/types.hpp"

// Mass data, coordinate charts (Cartesian <-> reduced) and the scalar
// quantities I, K, U and the configurational measure mu.
namespace saari::core {

std::pair<Complex, Complex> jacobi_vectors(const Masses& m, const std::array<Complex, 3>& q);

// eta = sqrt(n) * J2 / J1; singular at the 1-2 binary collision.
Complex shape_eta(const Masses& m, const std::array<Complex, 3>& q);

// Normalised configuration xi_k(eta) with xi2 - xi1 = 1 and sum m_k xi_k = 0.
std::array<Complex, 3> xi_from_eta(const Masses& m, Complex eta);

CartesianState cartesian_from_reduced(const Masses& m, const ReducedState& s);
ReducedState reduced_from_cartesian(const Masses& m, const CartesianState& s);

double moment_of_inertia(const Masses& m, const std::array<Complex, 3>& q);

// The three terms of K/2: size, rotation, shape.
struct KineticSplit {
    double size, rotation, shape;
    double sum() const { return size + rotation + shape; }
};
KineticSplit kinetic_split(const Masses& m, const ReducedState& s);

double potential(const Masses& m, double alpha, const std::array<Complex, 3>& q);

// mu = alpha I^{alpha/2} U, scale and rotation invariant.
double config_measure(const Masses& m, double alpha, const std::array<Complex, 3>& q);

// mu(eta) over a generic scalar field, with eta = x + iy and |eta|^2 written
// as x^2 + y^2 so complex continuation off the real locus is well defined.
template <class T>
T config_measure_eta_xy(const Masses& m, double alpha, const T& x, const T& y) {
    const double m12 = m.m1 + m.m2;
    const double inv_sqrt_n = 1.0 / m.sqrt_n();
    T zx = x * inv_sqrt_n;  // zeta = eta / sqrt(n)
    T zy = y * inv_sqrt_n;
    T r1sq = (zx - m.m1 / m12) * (zx - m.m1 / m12) + zy * zy;
    T r2sq = (zx + m.m2 / m12) * (zx + m.m2 / m12) + zy * zy;
    T size_factor = pow_real((m.m1 * m.m2 / m12) * (1.0 + x * x + y * y), alpha / 2);
    T pair_sum = m.m1 * m.m2 + m.m2 * m.m3 * pow_real(r1sq, -alpha / 2)
                 + m.m3 * m.m1 * pow_real(r2sq, -alpha / 2);
    return size_factor * pair_sum;
}

// Numeric front end with the collision guard for alpha > 0.
double config_measure_eta(const Masses& m, double alpha, Complex eta);

// The two finite binary-collision points of the eta chart (3-1 and 2-3
// collisions; the 1-2 collision sits at eta = infinity).
std::pair<Complex, Complex> eta_collision_points(const Masses& m);

}  // namespace saari::core
