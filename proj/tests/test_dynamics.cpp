#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "saari/dynamics.hpp"

using namespace saari;
using namespace saari::dynamics;

namespace {

const Masses kEqual{1, 1, 1};

// unit-side equilateral triangle centred at the origin
std::array<Complex, 3> equilateral_unit() {
    double h = 1 / (2 * std::sqrt(3.0));
    return {Complex(-0.5, -h), Complex(0.5, -h), Complex(0, 2 * h)};
}

// equal masses, unit mutual distances, rigid rotation omega = sqrt(3)
CartesianState lagrange_circular() {
    CartesianState s;
    s.q = equilateral_unit();
    double omega = std::sqrt(3.0);
    for (int k = 0; k < 3; ++k) s.qdot[k] = Complex(0, omega) * s.q[k];
    return s;
}

CartesianState random_state(std::mt19937& rng, const Masses& m = kEqual) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double mv[3] = {m.m1, m.m2, m.m3};
    for (;;) {
        CartesianState s;
        Complex mq, mp;
        for (int k = 0; k < 3; ++k) {
            s.q[k] = {u(rng), u(rng)};
            s.qdot[k] = {u(rng), u(rng)};
            mq += mv[k] * s.q[k];
            mp += mv[k] * s.qdot[k];
        }
        for (int k = 0; k < 3; ++k) {
            s.q[k] -= mq / m.total();
            s.qdot[k] -= mp / m.total();
        }
        double dmin = std::min({std::abs(s.q[1] - s.q[0]), std::abs(s.q[2] - s.q[1]),
                                std::abs(s.q[0] - s.q[2])});
        if (dmin > 0.3) return s;
    }
}

double min_separation_along(const Masses& m, const std::vector<TrajectorySample>& traj) {
    double dmin = 1e300;
    for (const auto& smp : traj) {
        CartesianState s = core::cartesian_from_reduced(m, smp.state);
        dmin = std::min({dmin, std::abs(s.q[1] - s.q[0]), std::abs(s.q[2] - s.q[1]),
                         std::abs(s.q[0] - s.q[2])});
    }
    return dmin;
}

// a random orbit that keeps the bodies well separated over tspan
std::vector<TrajectorySample> tame_random_orbit(const Masses& m, double alpha, std::mt19937& rng,
                                                std::pair<double, double> tspan,
                                                const IntegratorConfig& cfg, int n_samples,
                                                CartesianState* init = nullptr) {
    for (;;) {
        CartesianState s = random_state(rng, m);
        try {
            auto traj = integrate(m, alpha, s, tspan, cfg, n_samples);
            if (min_separation_along(m, traj) < 0.25) continue;
            if (init) *init = s;
            return traj;
        } catch (const CollisionStop&) {
        } catch (const StepSizeUnderflow&) {
        }
    }
}

}  // namespace

TEST_CASE("cartesian accelerations") {
    CartesianState s;
    s.q = equilateral_unit();
    auto a = cartesian_rhs(kEqual, 1.0, s);
    for (int k = 0; k < 3; ++k) {
        CHECK(std::abs(a[k]) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-13));
        // points back at the centroid
        CHECK(std::abs(a[k] / std::abs(a[k]) + s.q[k] / std::abs(s.q[k])) < 1e-13);
    }

    // symmetric pair, third mass at the origin on the axis
    CartesianState sym;
    sym.q = {Complex(-1, 0.5), Complex(1, 0.5), Complex(0, -0.25)};
    Masses msym{1, 1, 4};
    auto asym = cartesian_rhs(msym, 1.0, sym);
    CHECK(std::abs(asym[2].real()) < 1e-14);

    // alpha = -2 is the harmonic oscillator about the centre of mass
    std::mt19937 rng(83);
    CartesianState r = random_state(rng);
    auto ah = cartesian_rhs(kEqual, -2.0, r);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(ah[k] + 3.0 * r.q[k]) < 1e-12);

    CartesianState coll;
    coll.q = {Complex(0, 0), Complex(1e-13, 0), Complex(1, 1)};
    CHECK_THROWS_AS((void)cartesian_rhs(kEqual, 1.0, coll), BinaryCollision);
}

TEST_CASE("angular momentum") {
    ReducedState rigid;
    rigid.r = 1;
    rigid.eta = {0.3, 0.4};
    rigid.phidot = 2.5;
    CHECK(angular_momentum(kEqual, rigid) == doctest::Approx(2.5));

    ReducedState radial;
    radial.r = 1.7;
    radial.eta = {0.3, 0.4};
    radial.etadot = 2.0 * radial.eta;
    CHECK(angular_momentum(kEqual, radial) == doctest::Approx(0.0));

    std::mt19937 rng(89);
    for (int i = 0; i < 30; ++i) {
        CartesianState s = random_state(rng);
        ReducedState red = core::reduced_from_cartesian(kEqual, s);
        double ccart = 0;
        for (int k = 0; k < 3; ++k) ccart += wedge(s.q[k], s.qdot[k]);
        CHECK(angular_momentum(kEqual, red) == doctest::Approx(ccart).epsilon(1e-12));
    }
}

TEST_CASE("radial equation") {
    ReducedState lag;
    lag.r = 1;
    lag.eta = {0, 1};
    CHECK(std::abs(rdot2_rhs(kEqual, 1.0, std::sqrt(3.0), lag)) < 1e-13);

    ReducedState rest;
    rest.r = 0.7;
    rest.eta = {0.2, 0.9};
    CHECK(rdot2_rhs(kEqual, 1.0, 0.0, rest) < 0);
    CHECK(rdot2_rhs(kEqual, 2.0, 0.0, rest) < 0);

    // matches the second finite difference of sqrt(I) along a Cartesian orbit
    std::mt19937 rng(97);
    CartesianState s = random_state(rng);
    IntegratorConfig cfg;
    auto traj = integrate(kEqual, 1.0, s, {0.0, 0.02}, cfg, 5);
    double dt = traj[1].t - traj[0].t;
    double rddot_fd = (traj[0].state.r - 2 * traj[1].state.r + traj[2].state.r) / (dt * dt);
    double rddot = rdot2_rhs(kEqual, 1.0, traj[1].C, traj[1].state);
    CHECK(rddot_fd == doctest::Approx(rddot).epsilon(1e-5));
}

TEST_CASE("shape equation in tau") {
    // at a critical point with no shape velocity nothing moves
    CHECK(std::abs(eta_rhs_tau(kEqual, 1.0, 0.7, 1.3, {0, 1}, {0, 0})) < 1e-11);

    // conjugation symmetry with C -> -C
    Complex eta{0.4, 0.8}, ep{-0.2, 0.5};
    Complex a = eta_rhs_tau(kEqual, 1.0, 0.9, 1.1, eta, ep);
    Complex b = eta_rhs_tau(kEqual, 1.0, -0.9, 1.1, std::conj(eta), std::conj(ep));
    CHECK(std::abs(std::conj(a) - b) < 1e-12);
}

TEST_CASE("tau reparametrisation and shape speed") {
    ReducedState s;
    s.r = 1;
    CHECK(tau_reparam(s) == doctest::Approx(1.0));
    s.r = 2;
    s.eta = {0, 1};
    CHECK(tau_reparam(s) == doctest::Approx(0.5));
    CHECK(shape_speed_v2(s) == doctest::Approx(0.0));

    ReducedState sp;
    sp.r = 1;
    sp.etadot = {0, 3};
    CHECK(shape_speed_v2(sp) == doctest::Approx(9.0));
    // equals |d eta / d tau|^2
    sp.eta = {0.6, -0.2};
    double scale = sp.r * sp.r / (1 + std::norm(sp.eta));
    CHECK(shape_speed_v2(sp) == doctest::Approx(std::norm(scale * sp.etadot)).epsilon(1e-13));
}

TEST_CASE("total energy") {
    ReducedState lag;
    lag.r = 1;
    lag.eta = {0, 1};
    lag.phidot = std::sqrt(3.0);
    CHECK(total_energy(kEqual, 1.0, std::sqrt(3.0), lag) == doctest::Approx(-1.5));

    std::mt19937 rng(101);
    for (int i = 0; i < 30; ++i) {
        CartesianState s = random_state(rng);
        ReducedState red = core::reduced_from_cartesian(kEqual, s);
        double C = angular_momentum(kEqual, red);
        double ke = 0;
        for (int k = 0; k < 3; ++k) ke += std::norm(s.qdot[k]);
        double e_cart = ke / 2 - core::potential(kEqual, 1.0, s.q);
        CHECK(total_energy(kEqual, 1.0, C, red) == doctest::Approx(e_cart).epsilon(1e-12));
    }

    // alpha=2 circular rest states need C^2 + v^2 = mu
    ReducedState rest;
    rest.r = 1;
    rest.eta = {0.3, 1.2};
    double mu = core::config_measure_eta(kEqual, 2.0, rest.eta);
    double C = 0.8;
    double v = std::sqrt(mu - C * C);
    rest.etadot = Complex(0, v) * (1 + std::norm(rest.eta)) / (rest.r * rest.r);
    rest.phidot = C / (rest.r * rest.r) - wedge(rest.eta, rest.etadot) / (1 + std::norm(rest.eta));
    CHECK(std::abs(total_energy(kEqual, 2.0, C, rest)) < 1e-12);
}

TEST_CASE("lagrange circular orbit closes") {
    CartesianState s = lagrange_circular();
    double T = 2 * M_PI / std::sqrt(3.0);
    IntegratorConfig cfg;
    cfg.rel_tol = 1e-12;
    cfg.abs_tol = 1e-14;
    auto traj = integrate(kEqual, 1.0, s, {0.0, T}, cfg, 101);
    CHECK(std::abs(traj.back().state.r - traj.front().state.r) < 1e-9);
    CHECK(std::abs(traj.back().state.eta - traj.front().state.eta) < 1e-9);

    auto hom = is_homographic(traj, 1e-8);
    CHECK(hom.homographic);
    for (const auto& z : hom.z) CHECK(std::abs(std::abs(z) - 1.0) < 1e-9);
}

TEST_CASE("conservation along random orbits") {
    std::mt19937 rng(103);
    IntegratorConfig cfg;
    cfg.rel_tol = 1e-12;
    cfg.abs_tol = 1e-14;
    for (double alpha : {1.0, 2.0, -2.0}) {
        auto traj = tame_random_orbit(kEqual, alpha, rng, {0.0, 3.0}, cfg, 200);
        double E0 = traj.front().E, C0 = traj.front().C;
        for (const auto& smp : traj) {
            CHECK(std::abs(smp.E - E0) < 1e-9 * (1 + std::abs(E0)));
            CHECK(std::abs(smp.C - C0) < 1e-9 * (1 + std::abs(C0)));
        }
    }
}

TEST_CASE("reduced and cartesian formulations agree") {
    std::mt19937 rng(107);
    Masses m{1.0, 2.0, 3.0};
    IntegratorConfig cfg;
    cfg.rel_tol = 1e-12;
    cfg.abs_tol = 1e-14;
    CartesianState s = lagrange_circular();
    for (int trial = 0; trial < 3; ++trial) {
        const Masses& mm = trial == 0 ? kEqual : m;
        std::vector<TrajectorySample> a;
        if (trial == 0)
            a = integrate(mm, 1.0, s, {0.0, 1.5}, cfg, 60);
        else
            a = tame_random_orbit(mm, 1.0, rng, {0.0, 1.5}, cfg, 60, &s);
        ReducedState red0 = core::reduced_from_cartesian(mm, s);
        auto b = integrate(mm, 1.0, red0, {0.0, 1.5}, cfg, 60);
        for (std::size_t i = 0; i < a.size(); ++i) {
            double sc = 1 + std::abs(a[i].I);
            CHECK(std::abs(a[i].I - b[i].I) < 1e-8 * sc);
            CHECK(std::abs(a[i].mu - b[i].mu) < 1e-8 * (1 + std::abs(a[i].mu)));
            CHECK(std::abs(a[i].E - b[i].E) < 1e-8 * (1 + std::abs(a[i].E)));
            CHECK(std::abs(a[i].C - b[i].C) < 1e-8 * (1 + std::abs(a[i].C)));
        }
    }
}

TEST_CASE("size-shape coupling residual") {
    IntegratorConfig cfg;
    cfg.rel_tol = 1e-12;
    cfg.abs_tol = 1e-14;

    // homographic orbit: both sides vanish identically
    auto hom = integrate(kEqual, 1.0, lagrange_circular(), {0.0, 1.0}, cfg, 101);
    for (auto [t, res] : saari_relation_residual(kEqual, 1.0, hom))
        CHECK(std::abs(res) < 1e-8);
    // and v constant (zero) goes with mu constant
    for (const auto& smp : hom) {
        CHECK(std::abs(smp.v2) < 1e-16);
        CHECK(std::abs(smp.mu - hom.front().mu) < 1e-10);
    }

    // generic orbits: finite-difference accuracy
    std::mt19937 rng(109);
    for (double alpha : {1.0, 2.0, -2.0}) {
        auto traj = tame_random_orbit(kEqual, alpha, rng, {0.0, 1.0}, cfg, 1001);
        double scale = 0, lj_scale = 1;
        for (const auto& smp : traj) {
            scale = std::max(scale, std::abs(smp.mu));
            lj_scale = std::max(lj_scale,
                                std::abs(4 * smp.E) + std::abs(2 * (2 - alpha) * smp.U));
        }
        for (auto [t, res] : saari_relation_residual(kEqual, alpha, traj))
            CHECK(std::abs(res) < 1e-6 * scale);
        for (auto [t, res] : lagrange_jacobi_residual(kEqual, alpha, traj))
            CHECK(std::abs(res) < 1e-6 * lj_scale);
    }

    std::vector<TrajectorySample> tiny(hom.begin(), hom.begin() + 3);
    CHECK_THROWS_AS((void)saari_relation_residual(kEqual, 1.0, tiny), InsufficientSamples);
}

TEST_CASE("lagrange-jacobi on closed forms") {
    IntegratorConfig cfg;
    cfg.rel_tol = 1e-12;
    cfg.abs_tol = 1e-14;

    // circular orbit: d^2I/dt^2 = 0 = 4E + 2U with E = -3/2, U = 3
    auto traj = integrate(kEqual, 1.0, lagrange_circular(), {0.0, 1.0}, cfg, 101);
    CHECK(traj.front().E == doctest::Approx(-1.5).epsilon(1e-10));
    CHECK(traj.front().U == doctest::Approx(3.0).epsilon(1e-10));
    for (auto [t, res] : lagrange_jacobi_residual(kEqual, 1.0, traj))
        CHECK(std::abs(res) < 1e-7);

    // alpha=2 with E=0 and zero initial I-dot: I stays constant
    ReducedState rest;
    rest.r = 1;
    rest.eta = {0.3, 1.2};
    double mu = core::config_measure_eta(kEqual, 2.0, rest.eta);
    double C = 0.8;
    double v = std::sqrt(mu - C * C);
    rest.etadot = Complex(0, v) * (1 + std::norm(rest.eta)) / (rest.r * rest.r);
    rest.phidot = C / (rest.r * rest.r) - wedge(rest.eta, rest.etadot) / (1 + std::norm(rest.eta));
    std::vector<TrajectorySample> t2;
    for (double tf : {5.0, 2.0, 1.0, 0.5, 0.25, 0.1}) {
        try {
            t2 = integrate(kEqual, 2.0, rest, {0.0, tf}, cfg, 200);
            break;
        } catch (const CollisionStop&) {
        } catch (const StepSizeUnderflow&) {
        }
    }
    REQUIRE(!t2.empty());
    CHECK(std::abs(t2.front().E) < 1e-12);
    for (const auto& smp : t2) CHECK(std::abs(smp.I - 1.0) < 1e-8);
}

TEST_CASE("homothetic collapse is homographic") {
    // equal masses on a line with the middle one at the centre, no velocity
    ReducedState s;
    s.r = 1;
    s.eta = {0, 0};
    IntegratorConfig cfg;
    cfg.rel_tol = 1e-12;
    cfg.abs_tol = 1e-14;
    auto traj = integrate(kEqual, 1.0, s, {0.0, 0.5}, cfg, 60);
    auto hom = is_homographic(traj, 1e-9);
    CHECK(hom.homographic);
    for (const auto& z : hom.z) {
        CHECK(std::abs(z.imag()) < 1e-10);
        CHECK(z.real() <= 1.0 + 1e-12);
    }
    CHECK(traj.back().state.r < traj.front().state.r);

    // a visibly moving shape is not homographic
    std::mt19937 rng(113);
    auto wild = integrate(kEqual, 1.0, random_state(rng), {0.0, 1.0}, cfg, 40);
    CHECK_FALSE(is_homographic(wild, 1e-6).homographic);
}
