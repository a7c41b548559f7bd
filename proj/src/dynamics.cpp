#include "saari/dynamics.hpp"

#include <cmath>

#include "saari/shape_geometry.hpp"

namespace saari::dynamics {

namespace {

std::array<Complex, 3> accels(const Masses& m, double alpha, const CartesianState& s) {
    const double mv[3] = {m.m1, m.m2, m.m3};
    std::array<Complex, 3> a{};
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i) {
            if (i == k) continue;
            Complex d = s.q[i] - s.q[k];
            a[k] += mv[i] * d * std::pow(std::abs(d), -(alpha + 2));
        }
    return a;
}

double min_separation(const CartesianState& s) {
    return std::min({std::abs(s.q[1] - s.q[0]), std::abs(s.q[2] - s.q[1]),
                     std::abs(s.q[0] - s.q[2])});
}

void check_uniform(const std::vector<TrajectorySample>& traj, double& dt) {
    if (traj.size() < 5) throw InsufficientSamples("need at least 5 samples");
    dt = traj[1].t - traj[0].t;
    if (!(dt > 0)) throw InsufficientSamples("samples must be strictly increasing in t");
    for (std::size_t i = 1; i + 1 < traj.size(); ++i)
        if (std::abs(traj[i + 1].t - traj[i].t - dt) > 1e-6 * dt)
            throw InsufficientSamples("4th-order stencils need a uniform grid");
}

// Stop-and-report threshold for integration, relative to the configuration
// size.  Larger than the chart guard kCollisionEps so the event fires before
// the step control dies on the singularity.
constexpr double kStopEps = 1e-7;

TrajectorySample sample_from_reduced(const Masses& m, double alpha, double t,
                                     const ReducedState& s, double C) {
    TrajectorySample out;
    out.t = t;
    out.state = s;
    out.C = C;
    out.I = s.r * s.r;
    out.mu = core::config_measure_eta(m, alpha, s.eta);
    out.U = out.mu / (alpha * std::pow(s.r, alpha));
    out.K = 2 * core::kinetic_split(m, s).sum();
    out.v2 = shape_speed_v2(s);
    out.E = out.K / 2 - out.U;
    return out;
}

}  // namespace

std::array<Complex, 3> cartesian_rhs(const Masses& m, double alpha, const CartesianState& s) {
    double scale = std::sqrt(core::moment_of_inertia(m, s.q) / m.total());
    if (min_separation(s) < kCollisionEps * (scale + 1e-300)) throw BinaryCollision();
    return accels(m, alpha, s);
}

double angular_momentum(const Masses& m, const ReducedState& s) {
    (void)m;
    double conf = 1 + std::norm(s.eta);
    return s.r * s.r * (s.phidot + wedge(s.eta, s.etadot) / conf);
}

double rdot2_rhs(const Masses& m, double alpha, double C, const ReducedState& s) {
    if (!(s.r > 0)) throw TotalCollision();
    double conf = 1 + std::norm(s.eta);
    double mu = core::config_measure_eta(m, alpha, s.eta);
    return C * C / std::pow(s.r, 3) + s.r * std::norm(s.etadot) / (conf * conf)
           - mu / std::pow(s.r, alpha + 1);
}

Complex eta_rhs_tau(const Masses& m, double alpha, double C, double r, Complex eta,
                    Complex etaprime) {
    if (!(r > 0)) throw TotalCollision();
    auto d = shape::mu_derivatives(m, alpha, {eta.real(), eta.imag()});
    double conf = 1 + std::norm(eta);
    Complex grad(d.mu_x, d.mu_y);
    return Complex(0, 2) * (-C + wedge(eta, etaprime)) / conf * etaprime
           + (std::pow(r, 2 - alpha) / alpha) * grad;
}

double tau_reparam(const ReducedState& s) {
    if (!(s.r > 0)) throw TotalCollision();
    return (1 + std::norm(s.eta)) / (s.r * s.r);
}

double shape_speed_v2(const ReducedState& s) {
    double conf = 1 + std::norm(s.eta);
    return std::pow(s.r, 4) * std::norm(s.etadot) / (conf * conf);
}

double total_energy(const Masses& m, double alpha, double C, const ReducedState& s) {
    if (!(s.r > 0)) throw TotalCollision();
    double mu = core::config_measure_eta(m, alpha, s.eta);
    double v2 = shape_speed_v2(s);
    return s.rdot * s.rdot / 2 + (C * C + v2) / (2 * s.r * s.r)
           - mu / (alpha * std::pow(s.r, alpha));
}

std::vector<std::pair<double, double>> saari_relation_residual(
    const Masses& m, double alpha, const std::vector<TrajectorySample>& traj) {
    (void)m;
    double dt;
    check_uniform(traj, dt);
    std::vector<std::pair<double, double>> out;
    auto d1 = [&](auto field, std::size_t i) {
        return (field(traj[i - 2]) - 8 * field(traj[i - 1]) + 8 * field(traj[i + 1])
                - field(traj[i + 2]))
               / (12 * dt);
    };
    for (std::size_t i = 2; i + 2 < traj.size(); ++i) {
        double dmu = d1([](const TrajectorySample& s) { return s.mu; }, i);
        double dv2 = d1([](const TrajectorySample& s) { return s.v2; }, i);
        double r = traj[i].state.r;
        out.emplace_back(traj[i].t, dmu - alpha * std::pow(r, alpha - 2) / 2 * dv2);
    }
    return out;
}

std::vector<std::pair<double, double>> lagrange_jacobi_residual(
    const Masses& m, double alpha, const std::vector<TrajectorySample>& traj) {
    (void)m;
    double dt;
    check_uniform(traj, dt);
    std::vector<std::pair<double, double>> out;
    for (std::size_t i = 2; i + 2 < traj.size(); ++i) {
        double Iddot = (-traj[i - 2].I + 16 * traj[i - 1].I - 30 * traj[i].I + 16 * traj[i + 1].I
                        - traj[i + 2].I)
                       / (12 * dt * dt);
        // with U carrying the 1/alpha factor the virial coefficient is 2(2-alpha)
        out.emplace_back(traj[i].t, Iddot - 4 * traj[i].E - 2 * (2 - alpha) * traj[i].U);
    }
    return out;
}

std::vector<TrajectorySample> integrate(const Masses& m, double alpha,
                                        const CartesianState& initial,
                                        std::pair<double, double> tspan,
                                        const IntegratorConfig& cfg, int n_samples) {
    if (n_samples < 2) throw ConfigError("need at least 2 samples");
    std::vector<double> times(n_samples);
    for (int i = 0; i < n_samples; ++i)
        times[i] = tspan.first + (tspan.second - tspan.first) * i / (n_samples - 1);

    auto pack = [](const CartesianState& s, std::vector<double>& y) {
        for (int k = 0; k < 3; ++k) {
            y[4 * k] = s.q[k].real();
            y[4 * k + 1] = s.q[k].imag();
            y[4 * k + 2] = s.qdot[k].real();
            y[4 * k + 3] = s.qdot[k].imag();
        }
    };
    auto unpack = [](const std::vector<double>& y) {
        CartesianState s;
        for (int k = 0; k < 3; ++k) {
            s.q[k] = {y[4 * k], y[4 * k + 1]};
            s.qdot[k] = {y[4 * k + 2], y[4 * k + 3]};
        }
        return s;
    };

    std::vector<double> y0(12);
    pack(initial, y0);
    auto rhs = [&](double, const std::vector<double>& y, std::vector<double>& dy) {
        CartesianState s = unpack(y);
        auto a = accels(m, alpha, s);
        for (int k = 0; k < 3; ++k) {
            dy[4 * k] = s.qdot[k].real();
            dy[4 * k + 1] = s.qdot[k].imag();
            dy[4 * k + 2] = a[k].real();
            dy[4 * k + 3] = a[k].imag();
        }
    };

    std::vector<TrajectorySample> out;
    out.reserve(n_samples);
    auto observe = [&](double t, const std::vector<double>& y) {
        CartesianState s = unpack(y);
        ReducedState red = core::reduced_from_cartesian(m, s);
        TrajectorySample smp;
        smp.t = t;
        smp.state = red;
        smp.I = core::moment_of_inertia(m, s.q);
        smp.U = core::potential(m, alpha, s.q);
        double ke = 0;
        const double mv[3] = {m.m1, m.m2, m.m3};
        for (int k = 0; k < 3; ++k) ke += mv[k] * std::norm(s.qdot[k]);
        smp.K = ke;
        smp.E = ke / 2 - smp.U;
        smp.C = mv[0] * wedge(s.q[0], s.qdot[0]) + mv[1] * wedge(s.q[1], s.qdot[1])
                + mv[2] * wedge(s.q[2], s.qdot[2]);
        smp.mu = core::config_measure(m, alpha, s.q);
        smp.v2 = shape_speed_v2(red);
        out.push_back(smp);
    };
    auto guard = [&](double t, const std::vector<double>& y) {
        if (!cfg.collision_stop) return true;
        CartesianState s = unpack(y);
        double scale = std::sqrt(core::moment_of_inertia(m, s.q) / m.total());
        if (min_separation(s) < kStopEps * (scale + 1e-300)) throw CollisionStop(t);
        return true;
    };
    DormandPrince::run(rhs, tspan.first, tspan.second, y0, cfg, times, observe, guard);
    return out;
}

std::vector<TrajectorySample> integrate(const Masses& m, double alpha,
                                        const ReducedState& initial,
                                        std::pair<double, double> tspan,
                                        const IntegratorConfig& cfg, int n_samples) {
    if (n_samples < 2) throw ConfigError("need at least 2 samples");
    std::vector<double> times(n_samples);
    for (int i = 0; i < n_samples; ++i)
        times[i] = tspan.first + (tspan.second - tspan.first) * i / (n_samples - 1);

    const double C = angular_momentum(m, initial);
    // y = (r, rdot, phi, eta_x, eta_y, etadot_x, etadot_y)
    std::vector<double> y0 = {initial.r,          initial.rdot,       initial.phi,
                              initial.eta.real(), initial.eta.imag(), initial.etadot.real(),
                              initial.etadot.imag()};
    auto unpack = [&](const std::vector<double>& y) {
        ReducedState s;
        s.r = y[0];
        s.rdot = y[1];
        s.phi = y[2];
        s.eta = {y[3], y[4]};
        s.etadot = {y[5], y[6]};
        double conf = 1 + std::norm(s.eta);
        s.phidot = C / (s.r * s.r) - wedge(s.eta, s.etadot) / conf;
        return s;
    };
    auto rhs = [&](double, const std::vector<double>& y, std::vector<double>& dy) {
        ReducedState s = unpack(y);
        double conf = 1 + std::norm(s.eta);
        double scale = s.r * s.r / conf;  // dt/dtau
        Complex etaprime = scale * s.etadot;
        Complex eta2tau = eta_rhs_tau(m, alpha, C, s.r, s.eta, etaprime);
        Complex etaddot = eta2tau / (scale * scale)
                          - (2 * s.rdot / s.r - 2 * dot(s.eta, s.etadot) / conf) * s.etadot;
        dy[0] = s.rdot;
        dy[1] = rdot2_rhs(m, alpha, C, s);
        dy[2] = s.phidot;
        dy[3] = s.etadot.real();
        dy[4] = s.etadot.imag();
        dy[5] = etaddot.real();
        dy[6] = etaddot.imag();
    };

    std::vector<TrajectorySample> out;
    out.reserve(n_samples);
    auto observe = [&](double t, const std::vector<double>& y) {
        out.push_back(sample_from_reduced(m, alpha, t, unpack(y), C));
    };
    auto guard = [&](double t, const std::vector<double>& y) {
        if (!cfg.collision_stop) return true;
        ReducedState s = unpack(y);
        auto [c1, c2] = core::eta_collision_points(m);
        double sc = 1 + std::abs(s.eta);
        if (std::abs(s.eta - c1) < kStopEps * sc || std::abs(s.eta - c2) < kStopEps * sc
            || std::abs(s.eta) > 1e4 || !(s.r > kStopEps))
            throw CollisionStop(t);
        return true;
    };
    DormandPrince::run(rhs, tspan.first, tspan.second, y0, cfg, times, observe, guard);
    return out;
}

HomographicCheck is_homographic(const std::vector<TrajectorySample>& traj, double tol) {
    HomographicCheck out;
    if (traj.empty()) return out;
    Complex eta0 = traj.front().state.eta;
    double dev = 0;
    for (const auto& s : traj) dev = std::max(dev, std::abs(s.state.eta - eta0));
    out.homographic = dev <= tol;
    if (out.homographic) {
        double r0 = traj.front().state.r, phi0 = traj.front().state.phi;
        out.z.reserve(traj.size());
        for (const auto& s : traj)
            out.z.push_back(s.state.r / r0 * std::exp(Complex(0, s.state.phi - phi0)));
    }
    return out;
}

}  // namespace saari::dynamics
