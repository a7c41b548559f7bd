#include "saari/shape_geometry.hpp"

#include <cmath>

namespace saari::shape {

Metric2 metric_xy(const ShapePoint& p) {
    double conf = 1 + p.x * p.x + p.y * p.y;
    double c2 = conf * conf;
    Metric2 out;
    out.g = {{{1 / c2, 0}, {0, 1 / c2}}};
    out.ginv = {{{c2, 0}, {0, c2}}};
    out.sqrt_det = 1 / c2;
    return out;
}

MuDerivs mu_derivatives(const Masses& m, double alpha, const ShapePoint& p) {
    if (alpha > 0) {
        auto [c1, c2] = core::eta_collision_points(m);
        double scale = 1.0 + std::abs(p.eta());
        if (std::abs(p.eta() - c1) < kCollisionEps * scale || std::abs(p.eta() - c2) < kCollisionEps * scale)
            throw BinaryCollision("mu derivatives at a binary collision point");
    }
    auto d = core::config_measure_eta_xy(m, alpha, Dual2<double>::var_x(p.x), Dual2<double>::var_y(p.y));
    return {d.v, d.dx, d.dy, d.dxx, d.dxy, d.dyy};
}

ScalarBundle scalars(const Masses& m, double alpha, const ShapePoint& p) {
    MuDerivs d = mu_derivatives(m, alpha, p);
    double conf = 1 + p.x * p.x + p.y * p.y;
    double c2 = conf * conf;
    ScalarBundle out;
    out.mu = d.mu;
    out.grad_norm2 = c2 * (d.mu_x * d.mu_x + d.mu_y * d.mu_y);
    out.laplacian = c2 * (d.mu_xx + d.mu_yy);
    out.lambda = 4 * c2 * conf * (p.x * d.mu_x + p.y * d.mu_y) * (d.mu_x * d.mu_x + d.mu_y * d.mu_y)
                 + 2 * c2 * c2
                       * (d.mu_x * d.mu_x * d.mu_xx + 2 * d.mu_x * d.mu_y * d.mu_xy
                          + d.mu_y * d.mu_y * d.mu_yy);
    return out;
}

bool is_critical(const MuDerivs& d, const ShapePoint& p) {
    double conf = 1 + p.x * p.x + p.y * p.y;
    double grad = conf * std::hypot(d.mu_x, d.mu_y);
    return grad < 1e-12 * (1 + std::abs(d.mu));
}

Complex constant_mu_velocity(const Masses& m, double alpha, const ShapePoint& p, double v) {
    MuDerivs d = mu_derivatives(m, alpha, p);
    if (is_critical(d, p)) throw CriticalPoint();
    Complex grad(d.mu_x, d.mu_y);
    return Complex(0, v) * grad / std::abs(grad);
}

double wedge_equipotential(const Masses& m, double alpha, const ShapePoint& p, double v) {
    MuDerivs d = mu_derivatives(m, alpha, p);
    if (is_critical(d, p)) throw CriticalPoint();
    double g2 = d.mu_x * d.mu_x + d.mu_y * d.mu_y;
    return v * v * v
           * (d.mu_x * d.mu_x * d.mu_yy - 2 * d.mu_x * d.mu_y * d.mu_xy + d.mu_y * d.mu_y * d.mu_xx)
           / std::pow(g2, 1.5);
}

double wedge_eom(const Masses& m, double alpha, const ShapePoint& p, double C, double v, double r) {
    MuDerivs d = mu_derivatives(m, alpha, p);
    if (is_critical(d, p)) throw CriticalPoint();
    if (!(r > 0)) throw TotalCollision();
    double g2 = d.mu_x * d.mu_x + d.mu_y * d.mu_y;
    double conf = 1 + p.x * p.x + p.y * p.y;
    return 2 * v * v * (-C + v * (p.x * d.mu_x + p.y * d.mu_y) / std::sqrt(g2)) / conf
           - std::pow(r, 2 - alpha) * v * std::sqrt(g2) / alpha;
}

double necessary_rhs(const Masses& m, double alpha, const ShapePoint& p, double C, double v) {
    ScalarBundle s = scalars(m, alpha, p);
    MuDerivs d = mu_derivatives(m, alpha, p);
    if (is_critical(d, p)) throw CriticalPoint();
    double grad = std::sqrt(s.grad_norm2);
    return -2 * C * v / grad + v * v * s.lambda / (2 * s.grad_norm2 * s.grad_norm2)
           - v * v * s.laplacian / s.grad_norm2;
}

}  // namespace saari::shape
