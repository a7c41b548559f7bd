#include "saari/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "saari/bipolar.hpp"
#include "saari/core_model.hpp"
#include "saari/integrator.hpp"

namespace saari::analysis {

namespace {

double metric_grad_norm(const shape::MuDerivs& d, const shape::ShapePoint& p) {
    double conf = 1 + p.x * p.x + p.y * p.y;
    return conf * std::hypot(d.mu_x, d.mu_y);
}

// metric length of the chord a -> b, midpoint conformal factor
double metric_dist(const shape::ShapePoint& a, const shape::ShapePoint& b) {
    double cx = 0.5 * (a.x + b.x), cy = 0.5 * (a.y + b.y);
    return std::hypot(a.x - b.x, a.y - b.y) / (1 + cx * cx + cy * cy);
}

struct RefineResult {
    bool ok = false;
    shape::ShapePoint p{0, 0};
    double grad_norm = 0;
};

// full-Hessian Newton on grad mu = 0, damped to step length 1/2
RefineResult refine_critical(const Masses& m, double alpha, shape::ShapePoint p) {
    for (int it = 0; it < 60; ++it) {
        shape::MuDerivs d;
        try {
            d = shape::mu_derivatives(m, alpha, p);
        } catch (const BinaryCollision&) {
            return {};
        }
        double gn = metric_grad_norm(d, p);
        if (gn < 1e-13 * (1 + std::abs(d.mu))) return {true, p, gn};
        double det = d.mu_xx * d.mu_yy - d.mu_xy * d.mu_xy;
        if (std::abs(det) < 1e-300) return {};
        double dx = (d.mu_yy * d.mu_x - d.mu_xy * d.mu_y) / det;
        double dy = (d.mu_xx * d.mu_y - d.mu_xy * d.mu_x) / det;
        double len = std::hypot(dx, dy);
        if (len > 0.5) {
            dx *= 0.5 / len;
            dy *= 0.5 / len;
        }
        p = {p.x - dx, p.y - dy};
        if (std::hypot(p.x, p.y) > 50) return {};
    }
    return {};
}

// Newton projection onto mu = level along the gradient direction
shape::ShapePoint correct_to_level(const Masses& m, double alpha, double level,
                                   shape::ShapePoint p, double tol) {
    for (int it = 0; it < 50; ++it) {
        auto d = shape::mu_derivatives(m, alpha, p);
        if (shape::is_critical(d, p)) throw CriticalPointEncounter();
        double res = d.mu - level;
        if (std::abs(res) < tol * std::max(1.0, std::abs(level))) return p;
        double g2 = d.mu_x * d.mu_x + d.mu_y * d.mu_y;
        double dx = res * d.mu_x / g2, dy = res * d.mu_y / g2;
        double len = std::hypot(dx, dy);
        if (len > 0.2) {
            dx *= 0.2 / len;
            dy *= 0.2 / len;
        }
        p = {p.x - dx, p.y - dy};
    }
    throw SolverStall("level-set corrector did not converge");
}

}  // namespace

CentralConfigSet find_central_configs(const Masses& m, double alpha) {
    std::vector<shape::ShapePoint> seeds;
    auto [coll1, coll2] = core::eta_collision_points(m);
    for (int i = 0; i < 32; ++i) {
        double x = -4.0 + 8.0 * i / 31;
        // the two finite binary-collision points sit on the axis; skip seeds
        // that would start inside their singular neighbourhood
        if (std::abs(x - coll1.real()) < 0.05 || std::abs(x - coll2.real()) < 0.05) continue;
        seeds.push_back({x, 0.0});
    }
    for (int sign : {+1, -1}) {
        Complex lag = bipolar::eta_from_bipolar(m, {1.0, 1.0}, sign);
        seeds.push_back({lag.real(), lag.imag()});
        seeds.push_back({lag.real() + 0.02, lag.imag() - 0.015 * sign});
    }

    CentralConfigSet out;
    for (const auto& seed : seeds) {
        RefineResult r = refine_critical(m, alpha, seed);
        if (!r.ok) {
            std::ostringstream ss;
            ss << "seed (" << seed.x << ", " << seed.y << ") stalled";
            out.stalled_seeds.push_back(ss.str());
            continue;
        }
        Complex eta = r.p.eta();
        bool merged = false;
        for (auto& cc : out.configs) {
            if (std::abs(cc.eta - eta) < 1e-7 * (1 + std::abs(eta))) {
                ++cc.seed_hits;
                merged = true;
                break;
            }
        }
        if (merged) continue;
        ConfigType type = std::abs(eta.imag()) > 1e-8 ? ConfigType::Lagrange : ConfigType::Euler;
        out.configs.push_back({eta, type, r.grad_norm, 1});
    }
    std::sort(out.configs.begin(), out.configs.end(), [](const auto& a, const auto& b) {
        if (a.eta.imag() != b.eta.imag()) return a.eta.imag() < b.eta.imag();
        return a.eta.real() < b.eta.real();
    });
    return out;
}

Contour trace_mu_contour(const Masses& m, double alpha, double mu_level, shape::ShapePoint seed,
                         const TraceOptions& opt) {
    if (!(opt.step > 0) || !(opt.corrector_tol > 0) || opt.max_nodes < 3)
        throw ConfigError("contour tracing needs a positive step and a sane node budget");

    shape::ShapePoint p = correct_to_level(m, alpha, mu_level, seed, opt.corrector_tol);
    Contour out;
    out.mu_level = mu_level;
    double s = 0;
    Complex prev_dir;
    bool has_prev = false;
    for (int n = 0; n < opt.max_nodes; ++n) {
        auto d = shape::mu_derivatives(m, alpha, p);
        if (shape::is_critical(d, p)) throw CriticalPointEncounter();
        out.nodes.push_back({s, p, d.mu});

        Complex tan(-d.mu_y, d.mu_x);
        tan /= std::abs(tan);
        if (has_prev && dot(tan, prev_dir) < 0) tan = -tan;
        prev_dir = tan;
        has_prev = true;

        double conf = 1 + p.x * p.x + p.y * p.y;
        shape::ShapePoint pred{p.x + opt.step * conf * tan.real(),
                               p.y + opt.step * conf * tan.imag()};
        shape::ShapePoint next = correct_to_level(m, alpha, mu_level, pred, opt.corrector_tol);
        s += metric_dist(p, next);
        p = next;
        if (static_cast<int>(out.nodes.size()) >= 10
            && metric_dist(p, out.nodes.front().p) < 0.75 * opt.step) {
            out.closed = true;
            out.perimeter = s + metric_dist(p, out.nodes.front().p);
            return out;
        }
    }
    throw OpenContourBudget();
}

ScanReport scan_necessary_condition(const Masses& m, double alpha, const Contour& c, double C,
                                    double v) {
    if (c.nodes.empty()) throw ConfigError("scan needs a non-empty contour");
    ScanReport rep;
    rep.alpha = alpha;
    rep.C = C;
    rep.v = v;
    const std::size_t n = c.nodes.size();
    rep.rows.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& nd = c.nodes[i];
        auto bp = bipolar::bipolar_from_eta(m, nd.p.eta());
        double F = shape::necessary_rhs(m, alpha, nd.p, C, v);
        ScanRow& row = rep.rows[i];
        row.s = nd.s;
        row.x = nd.p.x;
        row.y = nd.p.y;
        row.r1 = bp.r1;
        row.r2 = bp.r2;
        row.mu = nd.mu;
        row.F = F;
        if (alpha == 2.0) row.F_minus_half = F - 0.5;
        if (alpha == 1.0) row.implied_r = F;
        if (i == 0) {
            rep.F_min = rep.F_max = F;
        } else {
            rep.F_min = std::min(rep.F_min, F);
            rep.F_max = std::max(rep.F_max, F);
        }
    }
    rep.F_spread = rep.F_max - rep.F_min;

    if (alpha == 1.0) {
        if (n < 3) throw InsufficientSamples("implied-energy scan needs at least 3 nodes");
        // rdot = v F'(s) / F^2 since ds/dt = v / r^2 on the constant-mu flow
        for (std::size_t i = 0; i < n; ++i) {
            double fp, fm, sp, sm;
            if (c.closed) {
                std::size_t ip = (i + 1) % n, im = (i + n - 1) % n;
                fp = rep.rows[ip].F;
                fm = rep.rows[im].F;
                sp = rep.rows[ip].s + (ip < i ? c.perimeter : 0);
                sm = rep.rows[im].s - (im > i ? c.perimeter : 0);
            } else {
                std::size_t ip = std::min(i + 1, n - 1), im = i > 0 ? i - 1 : 0;
                fp = rep.rows[ip].F;
                fm = rep.rows[im].F;
                sp = rep.rows[ip].s;
                sm = rep.rows[im].s;
            }
            double r = rep.rows[i].implied_r;
            double rdot = v * (fp - fm) / (sp - sm) / (r * r);
            double E = rdot * rdot / 2 + (C * C + v * v) / (2 * r * r) - rep.rows[i].mu / r;
            rep.rows[i].implied_E = E;
            if (i == 0) {
                rep.E_min = rep.E_max = E;
            } else {
                rep.E_min = std::min(rep.E_min, E);
                rep.E_max = std::max(rep.E_max, E);
            }
        }
        rep.E_spread = rep.E_max - rep.E_min;
    }
    return rep;
}

FlowPath constant_mu_flow(const Masses& m, double alpha, shape::ShapePoint seed, double v,
                          double tau_span, int n_samples) {
    if (!(tau_span > 0) || n_samples < 2)
        throw ConfigError("flow needs a positive span and at least 2 samples");
    DormandPrince::Rhs rhs = [&](double, const std::vector<double>& y, std::vector<double>& dy) {
        Complex vel = shape::constant_mu_velocity(m, alpha, {y[0], y[1]}, v);
        dy[0] = vel.real();
        dy[1] = vel.imag();
    };
    std::vector<double> times(n_samples);
    for (int i = 0; i < n_samples; ++i) times[i] = tau_span * i / (n_samples - 1);
    FlowPath out;
    IntegratorConfig cfg;
    cfg.rel_tol = 1e-12;
    cfg.abs_tol = 1e-14;
    DormandPrince::run(rhs, 0, tau_span, {seed.x, seed.y}, cfg, times,
                       [&](double t, const std::vector<double>& y) {
                           out.tau.push_back(t);
                           out.points.push_back({y[0], y[1]});
                       });
    return out;
}

}  // namespace saari::analysis
