#pragma once

#include <array>
#include <complex>
#include <utility>
#include <vector>

#include "saari/dual2.hpp"
#include "saari/field.hpp"
#include "saari/types.hpp"

// Two-center bipolar coordinates (r1, r2) = (r23/r12, r31/r12): chart maps,
// the induced shape-sphere metric, mu(r1, r2), the (nu, rho) variables for
// alpha = 1 and 2, and numeric branch solving for the constant-mu locus.
namespace saari::bipolar {

inline constexpr double kDegenerateEps = 1e-12;

struct BipolarPoint {
    double r1, r2;
    bool physical() const {
        double rad = (1 - (r1 - r2) * (r1 - r2)) * ((r1 + r2) * (r1 + r2) - 1);
        return r1 > 0 && r2 > 0 && rad >= 0;
    }
};

BipolarPoint bipolar_from_eta(const Masses& m, Complex eta);

// sign picks the half plane: y = sign * sqrt(radicand) * sqrt(n)/2.
Complex eta_from_bipolar(const Masses& m, const BipolarPoint& p, int sign);

Metric2 metric_bipolar(const Masses& m, const BipolarPoint& p);

// The triangle-inequality radicand (1-(r1-r2)^2)((r1+r2)^2-1), generic.
template <class T>
T chart_radicand(const T& r1, const T& r2) {
    return (1.0 - (r1 - r2) * (r1 - r2)) * ((r1 + r2) * (r1 + r2) - 1.0);
}

template <class T>
T nu_of(const Masses& m, const T& r1, const T& r2) {
    return m.m1 * m.m2 + m.m2 * m.m3 * r1 * r1 + m.m3 * m.m1 * r2 * r2;
}

template <class T>
T rho_of(const Masses& m, double alpha, const T& r1, const T& r2) {
    return m.m1 * m.m2 + m.m2 * m.m3 * pow_real(r1, -alpha) + m.m3 * m.m1 * pow_real(r2, -alpha);
}

template <class T>
T mu_bipolar_t(const Masses& m, double alpha, const T& r1, const T& r2) {
    return pow_real(nu_of(m, r1, r2) / m.total(), alpha / 2) * rho_of(m, alpha, r1, r2);
}

double mu_bipolar(const Masses& m, double alpha, const BipolarPoint& p);

struct NuRho {
    double nu, rho, mu_tilde;
};

// nu, rho and the eliminated constant mu_tilde (M mu for alpha=2,
// mu sqrt(M) for alpha=1).
NuRho nu_rho(const Masses& m, int alpha, const BipolarPoint& p);

// The three curvature scalars of the shape-sphere metric evaluated in the
// bipolar chart, over a generic field.  All expressions are rational in
// (r1, r2) apart from the pow inside mu itself, so they continue to complex
// and series arguments.
template <class T>
struct ChartScalars {
    T mu, grad2, lap, lambda;
    T mu1, mu2;  // partials of mu by r1, r2
};

template <class T>
ChartScalars<T> scalars_t(const Masses& m, double alpha, const T& r1, const T& r2) {
    const double mm = m.m1 * m.m2 * m.m3 * m.total();
    auto d = mu_bipolar_t(m, alpha, Dual2<T>::var_x(r1), Dual2<T>::var_y(r2));
    const T &mu = d.v, &mu1 = d.dx, &mu2 = d.dy, &mu11 = d.dxx, &mu12 = d.dxy, &mu22 = d.dyy;

    T nu = nu_of(m, r1, r2);
    T nu1 = 2.0 * m.m2 * m.m3 * r1;
    T nu2 = 2.0 * m.m3 * m.m1 * r2;
    T pref = nu * nu / mm;

    T s = r1 * r1 + r2 * r2 - 1.0;   // 2 r1 r2 c
    T w = s / (r1 * r2);             // 2c
    T w1 = 2.0 / r2 - s / (r1 * r1 * r2);
    T w2 = 2.0 / r1 - s / (r2 * r2 * r1);

    T q = mu1 * mu1 + mu2 * mu2 + w * mu1 * mu2;
    T q1 = 2.0 * mu1 * mu11 + 2.0 * mu2 * mu12 + w1 * mu1 * mu2 + w * (mu11 * mu2 + mu1 * mu12);
    T q2 = 2.0 * mu1 * mu12 + 2.0 * mu2 * mu22 + w2 * mu1 * mu2 + w * (mu12 * mu2 + mu1 * mu22);

    ChartScalars<T> out;
    out.mu = mu;
    out.mu1 = mu1;
    out.mu2 = mu2;
    out.grad2 = pref * q;
    T p1 = (2.0 * nu * nu1 / mm) * q + pref * q1;
    T p2 = (2.0 * nu * nu2 / mm) * q + pref * q2;
    // lambda = g^{ij} (d_i mu)(d_j |grad mu|^2)
    T half_w = w / 2.0;  // c
    out.lambda = pref * (mu1 * p1 + mu2 * p2 + half_w * (mu1 * p2 + mu2 * p1));

    // Laplace-Beltrami of mu, written fully rationally: the sqrt of the
    // radicand cancels except through d(log R)/2
    T rad = chart_radicand(r1, r2);
    T rad1 = -2.0 * (r1 - r2) * ((r1 + r2) * (r1 + r2) - 1.0)
             + (1.0 - (r1 - r2) * (r1 - r2)) * 2.0 * (r1 + r2);
    T rad2 = 2.0 * (r1 - r2) * ((r1 + r2) * (r1 + r2) - 1.0)
             + (1.0 - (r1 - r2) * (r1 - r2)) * 2.0 * (r1 + r2);
    T a_flux = 2.0 * r1 * r2 * mu1 + s * mu2;
    T b_flux = s * mu1 + 2.0 * r1 * r2 * mu2;
    T div1 = 2.0 * r2 * mu1 + 2.0 * r1 * r2 * mu11 + 2.0 * r1 * mu2 + s * mu12;
    T div2 = 2.0 * r2 * mu1 + s * mu12 + 2.0 * r1 * mu2 + 2.0 * r1 * r2 * mu22;
    out.lap = (nu * nu / (2.0 * mm * r1 * r2))
              * (div1 + div2 - (a_flux * rad1 + b_flux * rad2) / (2.0 * rad));
    return out;
}

// Coordinate-free right-hand side of the necessary condition,
// F = -2Cv/|grad mu| + v^2 lambda / (2 |grad mu|^4) - v^2 lap / |grad mu|^2.
// The sqrt branch (sign of |grad mu|) only flips the C term.
template <class T>
T necessary_rhs_t(const ChartScalars<T>& s, double C, double v, bool flip_grad_branch = false) {
    T grad = sqrt(s.grad2);
    if (flip_grad_branch) grad = -grad;
    return (-2.0 * C * v) / grad + (v * v) * s.lambda / (2.0 * s.grad2 * s.grad2)
           - (v * v) * s.lap / s.grad2;
}

// Numeric branch solvers for the constant-mu locus continued in rho.
using Cx = std::complex<double>;

struct StrongBranches {
    // two (r1^2, r2^2) root pairs of the quadratic system
    std::array<std::pair<Cx, Cx>, 2> roots;
};
StrongBranches solve_r_strong(const Masses& m, double mu_tilde, Cx rho);

struct NewtonBranches {
    // four (r1, r2) root pairs of the quartic elimination
    std::array<std::pair<Cx, Cx>, 4> roots;
};
NewtonBranches solve_r_newton(const Masses& m, double mu_tilde, Cx rho);

}  // namespace saari::bipolar
