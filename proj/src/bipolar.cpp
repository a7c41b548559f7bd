#include "saari/bipolar.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "saari/errors.hpp"

namespace saari::bipolar {

BipolarPoint bipolar_from_eta(const Masses& m, Complex eta) {
    Complex zeta = eta / m.sqrt_n();
    double m12 = m.m1 + m.m2;
    return {std::abs(zeta - m.m1 / m12), std::abs(zeta + m.m2 / m12)};
}

Complex eta_from_bipolar(const Masses& m, const BipolarPoint& p, int sign) {
    double m12 = m.m1 + m.m2;
    double sn = m.sqrt_n();
    double rad = chart_radicand(p.r1, p.r2);
    if (rad < -kDegenerateEps) throw Unphysical();
    double x = (m.m1 - m.m2) * sn / (2 * m12) + (sn / 2) * (p.r2 * p.r2 - p.r1 * p.r1);
    double y = (sign >= 0 ? 1.0 : -1.0) * (sn / 2) * std::sqrt(std::max(rad, 0.0));
    return {x, y};
}

Metric2 metric_bipolar(const Masses& m, const BipolarPoint& p) {
    double rad = chart_radicand(p.r1, p.r2);
    if (rad <= kDegenerateEps) throw CollinearSingularity();
    double mm = m.m1 * m.m2 * m.m3 * m.total();
    double nu = nu_of(m, p.r1, p.r2);
    double pref = 4 * mm * p.r1 * p.r2 / (rad * nu * nu);
    double a = p.r1 * p.r2;
    double b = -(p.r1 * p.r1 + p.r2 * p.r2 - 1) / 2;
    double c = (p.r1 * p.r1 + p.r2 * p.r2 - 1) / (2 * p.r1 * p.r2);
    Metric2 out;
    out.g = {{{pref * a, pref * b}, {pref * b, pref * a}}};
    double ipref = nu * nu / mm;
    out.ginv = {{{ipref, ipref * c}, {ipref * c, ipref}}};
    out.sqrt_det = 2 * mm * p.r1 * p.r2 / (nu * nu * std::sqrt(rad));
    return out;
}

double mu_bipolar(const Masses& m, double alpha, const BipolarPoint& p) {
    if (p.r1 < kCollisionEps || p.r2 < kCollisionEps) throw BinaryCollision();
    return mu_bipolar_t(m, alpha, p.r1, p.r2);
}

NuRho nu_rho(const Masses& m, int alpha, const BipolarPoint& p) {
    if (alpha != 1 && alpha != 2) throw ConfigError("nu_rho is defined for alpha in {1, 2}");
    NuRho out;
    out.nu = nu_of(m, p.r1, p.r2);
    out.rho = rho_of(m, double(alpha), p.r1, p.r2);
    double mu = mu_bipolar(m, double(alpha), p);
    out.mu_tilde = (alpha == 2) ? m.total() * mu : mu * std::sqrt(m.total());
    return out;
}

StrongBranches solve_r_strong(const Masses& m, double mu_tilde, Cx rho) {
    if (std::abs(rho) == 0.0) throw DegenerateDiscriminant("rho = 0");
    Cx nu = mu_tilde / rho;
    Cx bb = nu - m.m1 * m.m2;
    Cx a = -m.m2 * m.m3 * (m.m1 * m.m2 - rho);
    Cx b = (m.m1 * m.m2 - rho) * bb - std::pow(m.m2 * m.m3, 2) + std::pow(m.m1 * m.m3, 2);
    Cx c = m.m2 * m.m3 * bb;
    if (std::abs(a) < 1e-300) throw DegenerateDiscriminant("quadratic degenerates at rho = m1 m2");
    Cx disc = b * b - 4.0 * a * c;
    Cx sq = std::sqrt(disc);
    if (std::real(std::conj(b) * sq) < 0) sq = -sq;  // |b + sq| maximal
    Cx q = -(b + sq) / 2.0;
    Cx s1_big = q / a;
    Cx s1_small = (std::abs(q) > 0) ? c / q : s1_big;
    auto other = [&](Cx s1) { return (bb - m.m2 * m.m3 * s1) / (m.m3 * m.m1); };
    StrongBranches out;
    // branch 0: finite r1^2 root; branch 1: its large partner
    if (std::abs(s1_small) <= std::abs(s1_big))
        out.roots = {{{s1_small, other(s1_small)}, {s1_big, other(s1_big)}}};
    else
        out.roots = {{{s1_big, other(s1_big)}, {s1_small, other(s1_small)}}};
    return out;
}

NewtonBranches solve_r_newton(const Masses& m, double mu_tilde, Cx rho) {
    if (std::abs(rho) == 0.0) throw RootFindingFailure("rho = 0");
    Cx nu = (mu_tilde / rho) * (mu_tilde / rho);
    Cx A = rho - m.m1 * m.m2;
    double b2 = m.m2 * m.m3;
    Cx d0 = m.m1 * m.m2 - nu;
    Cx c4 = b2 * A * A;
    Cx c3 = -2.0 * A * b2 * b2;
    Cx c2 = b2 * b2 * b2 + d0 * A * A + std::pow(m.m1, 3) * std::pow(m.m3, 3);
    Cx c1 = -2.0 * A * b2 * d0;
    Cx c0 = d0 * b2 * b2;
    if (std::abs(c4) < 1e-300) throw RootFindingFailure("leading quartic coefficient vanished");

    Eigen::Matrix4cd comp = Eigen::Matrix4cd::Zero();
    comp(0, 3) = -c0 / c4;
    comp(1, 3) = -c1 / c4;
    comp(2, 3) = -c2 / c4;
    comp(3, 3) = -c3 / c4;
    comp(1, 0) = comp(2, 1) = comp(3, 2) = 1.0;
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(comp);
    if (es.info() != Eigen::Success) throw RootFindingFailure();

    NewtonBranches out;
    for (int i = 0; i < 4; ++i) {
        Cx r1 = es.eigenvalues()(i);
        Cx r2 = m.m3 * m.m1 / (A - b2 / r1);
        // Newton polish on the full (nu, rho) system; keep the best iterate
        // so a singular jacobian at a double root cannot undo the eigenvalue
        Cx best_r1 = r1, best_r2 = r2;
        double best = 1e300;
        for (int it = 0; it < 50; ++it) {
            Cx f1 = m.m1 * m.m2 + m.m2 * m.m3 * r1 * r1 + m.m3 * m.m1 * r2 * r2 - nu;
            Cx f2 = m.m1 * m.m2 + m.m2 * m.m3 / r1 + m.m3 * m.m1 / r2 - rho;
            double res = std::abs(f1) / (1 + std::abs(nu)) + std::abs(f2) / (1 + std::abs(rho));
            if (res < best) {
                best = res;
                best_r1 = r1;
                best_r2 = r2;
            }
            if (res < 1e-14) break;
            Cx j11 = 2.0 * m.m2 * m.m3 * r1, j12 = 2.0 * m.m3 * m.m1 * r2;
            Cx j21 = -m.m2 * m.m3 / (r1 * r1), j22 = -m.m3 * m.m1 / (r2 * r2);
            Cx det = j11 * j22 - j12 * j21;
            if (std::abs(det) < 1e-13 * (std::abs(j11 * j22) + std::abs(j12 * j21))) break;
            r1 -= (f1 * j22 - f2 * j12) / det;
            r2 -= (f2 * j11 - f1 * j21) / det;
        }
        out.roots[i] = {best_r1, best_r2};
    }
    std::sort(out.roots.begin(), out.roots.end(), [](const auto& a, const auto& b) {
        if (std::abs(std::abs(a.first) - std::abs(b.first)) > 1e-12)
            return std::abs(a.first) < std::abs(b.first);
        return std::arg(a.first) < std::arg(b.first);
    });
    return out;
}

}  // namespace saari::bipolar
