#pragma once

#include <utility>
#include <vector>

#include "saari/core_model.hpp"
#include "saari/integrator.hpp"
#include "saari/types.hpp"

// Equations of motion in both formulations, conserved quantities, the
// size-shape coupling relation, and trajectory integration.
namespace saari::dynamics {

struct TrajectorySample {
    double t = 0;
    ReducedState state;
    double I = 0, U = 0, K = 0, E = 0;
    double C = 0;
    double mu = 0;
    double v2 = 0;
};

// Accelerations q.._k = sum_{i != k} m_i (q_i - q_k) / |q_i - q_k|^{alpha+2}.
std::array<Complex, 3> cartesian_rhs(const Masses& m, double alpha, const CartesianState& s);

double angular_momentum(const Masses& m, const ReducedState& s);

// r.. = C^2/r^3 + r |eta.|^2/(1+|eta|^2)^2 - mu(eta)/r^(alpha+1)
double rdot2_rhs(const Masses& m, double alpha, double C, const ReducedState& s);

// Shape equation in the rescaled time tau, taking eta' = d eta/d tau.
Complex eta_rhs_tau(const Masses& m, double alpha, double C, double r, Complex eta,
                    Complex etaprime);

double tau_reparam(const ReducedState& s);

// v^2 = r^4 |eta.|^2 / (1+|eta|^2)^2 = |d eta/d tau|^2
double shape_speed_v2(const ReducedState& s);

double total_energy(const Masses& m, double alpha, double C, const ReducedState& s);

// d mu/dt - (alpha r^(alpha-2)/2) d(v^2)/dt by 4th-order central differences.
// Returns (t_i, residual_i) with two boundary samples dropped on each side.
std::vector<std::pair<double, double>> saari_relation_residual(
    const Masses& m, double alpha, const std::vector<TrajectorySample>& traj);

// d^2 I/dt^2 - 4E - 2(2/alpha - 1)U, same stencil policy.
std::vector<std::pair<double, double>> lagrange_jacobi_residual(
    const Masses& m, double alpha, const std::vector<TrajectorySample>& traj);

// Adaptive integration sampling n_samples uniform times across tspan.
std::vector<TrajectorySample> integrate(const Masses& m, double alpha,
                                        const CartesianState& initial,
                                        std::pair<double, double> tspan,
                                        const IntegratorConfig& cfg, int n_samples);
std::vector<TrajectorySample> integrate(const Masses& m, double alpha,
                                        const ReducedState& initial,
                                        std::pair<double, double> tspan,
                                        const IntegratorConfig& cfg, int n_samples);

struct HomographicCheck {
    bool homographic = false;
    std::vector<Complex> z;  // z(t_i) when homographic
};

// True iff the shape stays constant within tol along the trajectory.
HomographicCheck is_homographic(const std::vector<TrajectorySample>& traj, double tol);

}  // namespace saari::dynamics
