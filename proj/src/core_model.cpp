#include "saari/core_model.hpp"

#include <cmath>

namespace saari::core {

std::pair<Complex, Complex> jacobi_vectors(const Masses& m, const std::array<Complex, 3>& q) {
    Complex j1 = q[1] - q[0];
    Complex j2 = (m.total() / (m.m1 + m.m2)) * q[2];
    return {j1, j2};
}

Complex shape_eta(const Masses& m, const std::array<Complex, 3>& q) {
    auto [j1, j2] = jacobi_vectors(m, q);
    double scale = std::sqrt(moment_of_inertia(m, q));
    if (std::abs(j1) < kCollisionEps * scale) throw BinaryCollision("1-2 collision: eta chart singular");
    return m.sqrt_n() * j2 / j1;
}

std::array<Complex, 3> xi_from_eta(const Masses& m, Complex eta) {
    const double m12 = m.m1 + m.m2;
    const double g = std::sqrt(m.m1 * m.m2 * m.m3 / m.total()) / m12;
    Complex xi1 = -m.m2 / m12 - g * eta;
    Complex xi2 = m.m1 / m12 - g * eta;
    Complex xi3 = std::sqrt(m.m1 * m.m2 / (m.total() * m.m3)) * eta;
    return {xi1, xi2, xi3};
}

CartesianState cartesian_from_reduced(const Masses& m, const ReducedState& s) {
    const double m12 = m.m1 + m.m2;
    auto xi = xi_from_eta(m, s.eta);
    // d(xi_k)/d(eta); xi_k is complex-linear in eta
    const Complex dxi[3] = {
        -std::sqrt(m.m1 * m.m2 * m.m3 / m.total()) / m12,
        -std::sqrt(m.m1 * m.m2 * m.m3 / m.total()) / m12,
        std::sqrt(m.m1 * m.m2 / (m.total() * m.m3)),
    };
    const double mk[3] = {m.m1, m.m2, m.m3};

    double norm2 = 0;
    for (int k = 0; k < 3; ++k) norm2 += mk[k] * std::norm(xi[k]);
    double norm = std::sqrt(norm2);
    double norm_dot = 0;
    for (int k = 0; k < 3; ++k) norm_dot += mk[k] * dot(xi[k], dxi[k] * s.etadot);
    norm_dot /= norm;

    Complex rot = std::polar(1.0, s.phi);
    CartesianState out;
    for (int k = 0; k < 3; ++k) {
        out.q[k] = s.r * rot * xi[k] / norm;
        Complex xidot = dxi[k] * s.etadot;
        out.qdot[k] = rot * ((s.rdot + Complex(0, 1) * s.r * s.phidot) * xi[k] / norm
                             + s.r * (xidot * norm - xi[k] * norm_dot) / norm2);
    }
    return out;
}

ReducedState reduced_from_cartesian(const Masses& m, const CartesianState& s) {
    double I = moment_of_inertia(m, s.q);
    if (I <= 0 || std::sqrt(I) < kCollisionEps) throw TotalCollision();
    ReducedState out;
    out.r = std::sqrt(I);
    out.eta = shape_eta(m, s.q);

    Complex u = s.q[1] - s.q[0];
    Complex udot = s.qdot[1] - s.qdot[0];
    out.phi = std::arg(u);
    out.phidot = wedge(u, udot) / std::norm(u);

    const double mk[3] = {m.m1, m.m2, m.m3};
    double idot = 0;
    for (int k = 0; k < 3; ++k) idot += 2 * mk[k] * dot(s.q[k], s.qdot[k]);
    out.rdot = idot / (2 * out.r);

    Complex j2dot = (m.total() / (m.m1 + m.m2)) * s.qdot[2];
    Complex j2 = (m.total() / (m.m1 + m.m2)) * s.q[2];
    out.etadot = m.sqrt_n() * (j2dot * u - j2 * udot) / (u * u);
    return out;
}

double moment_of_inertia(const Masses& m, const std::array<Complex, 3>& q) {
    double s = m.m1 * m.m2 * std::norm(q[0] - q[1]) + m.m2 * m.m3 * std::norm(q[1] - q[2])
               + m.m3 * m.m1 * std::norm(q[2] - q[0]);
    return s / m.total();
}

KineticSplit kinetic_split(const Masses& m, const ReducedState& s) {
    (void)m;
    double one_eta2 = 1.0 + std::norm(s.eta);
    double omega = s.phidot + wedge(s.eta, s.etadot) / one_eta2;
    KineticSplit ks;
    ks.size = 0.5 * s.rdot * s.rdot;
    ks.rotation = 0.5 * s.r * s.r * omega * omega;
    ks.shape = 0.5 * s.r * s.r * std::norm(s.etadot) / (one_eta2 * one_eta2);
    return ks;
}

double potential(const Masses& m, double alpha, const std::array<Complex, 3>& q) {
    double scale = std::sqrt(moment_of_inertia(m, q));
    const double pairs[3][3] = {{m.m1, m.m2, 0}, {m.m2, m.m3, 0}, {m.m3, m.m1, 0}};
    const Complex d[3] = {q[0] - q[1], q[1] - q[2], q[2] - q[0]};
    double u = 0;
    for (int p = 0; p < 3; ++p) {
        double rij = std::abs(d[p]);
        if (alpha > 0 && rij < kCollisionEps * scale) throw BinaryCollision();
        u += pairs[p][0] * pairs[p][1] / std::pow(rij, alpha);
    }
    return u / alpha;
}

double config_measure(const Masses& m, double alpha, const std::array<Complex, 3>& q) {
    double I = moment_of_inertia(m, q);
    return alpha * std::pow(I, alpha / 2) * potential(m, alpha, q);
}

std::pair<Complex, Complex> eta_collision_points(const Masses& m) {
    const double m12 = m.m1 + m.m2;
    // r1 = 0 is the 2-3 collision, r2 = 0 the 3-1 collision
    return {Complex(m.sqrt_n() * m.m1 / m12, 0), Complex(-m.sqrt_n() * m.m2 / m12, 0)};
}

double config_measure_eta(const Masses& m, double alpha, Complex eta) {
    if (alpha > 0) {
        auto [c1, c2] = eta_collision_points(m);
        double scale = 1.0 + std::abs(eta);
        if (std::abs(eta - c1) < kCollisionEps * scale || std::abs(eta - c2) < kCollisionEps * scale)
            throw BinaryCollision("eta at a binary collision point");
    }
    return config_measure_eta_xy(m, alpha, eta.real(), eta.imag());
}

}  // namespace saari::core
