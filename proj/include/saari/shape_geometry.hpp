#pragma once

#include "saari/core_model.hpp"
#include "saari/dual2.hpp"
#include "saari/types.hpp"

// Shape-sphere geometry in the (x, y) chart: the round metric, the scalars
// |grad mu|^2, Delta mu, lambda, the D operator and the necessary condition.
namespace saari::shape {

struct ShapePoint {
    double x, y;
    Complex eta() const { return {x, y}; }
};

Metric2 metric_xy(const ShapePoint& p);

struct MuDerivs {
    double mu, mu_x, mu_y, mu_xx, mu_xy, mu_yy;
};

// First and second partials of mu(eta) by second-order forward duals.
MuDerivs mu_derivatives(const Masses& m, double alpha, const ShapePoint& p);

struct ScalarBundle {
    double mu, grad_norm2, laplacian, lambda;
};

ScalarBundle scalars(const Masses& m, double alpha, const ShapePoint& p);

// Df = (1+x^2+y^2)^2 (mu_x d_y f - mu_y d_x f) for any differentiable f.
template <class F>
double d_operator(const Masses& m, double alpha, const ShapePoint& p, F&& f) {
    MuDerivs d = mu_derivatives(m, alpha, p);
    auto fd = f(Dual2<double>::var_x(p.x), Dual2<double>::var_y(p.y));
    double conf = 1 + p.x * p.x + p.y * p.y;
    return conf * conf * (d.mu_x * fd.dy - d.mu_y * fd.dx);
}

// Velocity of the constant-mu shape flow: orthogonal to the gradient with
// magnitude |v|.
Complex constant_mu_velocity(const Masses& m, double alpha, const ShapePoint& p, double v);

// The wedge d eta/d tau ^ d^2 eta/d tau^2 along an equipotential, from the
// geometry of the level set.
double wedge_equipotential(const Masses& m, double alpha, const ShapePoint& p, double v);

// Same wedge from the equation of motion.
double wedge_eom(const Masses& m, double alpha, const ShapePoint& p, double C, double v, double r);

// Coordinate-free right side of the necessary condition.
double necessary_rhs(const Masses& m, double alpha, const ShapePoint& p, double C, double v);

// Gradient threshold below which a point counts as critical.
bool is_critical(const MuDerivs& d, const ShapePoint& p);

}  // namespace saari::shape
