#pragma once

#include <string>
#include <vector>

#include "saari/shape_geometry.hpp"
#include "saari/types.hpp"

// Central-configuration finding, constant-mu contour tracing, the constant-mu
// shape flow, and necessary-condition scans along contours: the numerical
// evidence companion to the series verification.
namespace saari::analysis {

enum class ConfigType { Lagrange, Euler };

inline const char* to_string(ConfigType t) {
    return t == ConfigType::Lagrange ? "Lagrange" : "Euler";
}

struct CentralConfig {
    Complex eta;
    ConfigType type;
    double grad_norm;  // |grad mu| in the shape-sphere metric at the solution
    int seed_hits;     // distinct seeds that converged here
};

struct CentralConfigSet {
    std::vector<CentralConfig> configs;
    std::vector<std::string> stalled_seeds;
};

// Newton on grad mu = 0 from the collinear axis plus the two equilateral
// points; deduplicated, with Lagrange (y != 0) vs Euler (y = 0) labels.
CentralConfigSet find_central_configs(const Masses& m, double alpha);

struct ContourNode {
    double s;  // arclength from the seed, shape-sphere metric
    shape::ShapePoint p;
    double mu;
};

struct Contour {
    double mu_level = 0;
    std::vector<ContourNode> nodes;
    bool closed = false;
    double perimeter = 0;  // total metric length including the closing gap
};

struct TraceOptions {
    double step = 1e-2;  // arclength step in the shape-sphere metric
    double corrector_tol = 1e-12;
    int max_nodes = 100000;
};

// Predictor-corrector continuation of the mu = mu_level set from a seed;
// terminates on closure or throws OpenContourBudget / CriticalPointEncounter.
Contour trace_mu_contour(const Masses& m, double alpha, double mu_level, shape::ShapePoint seed,
                         const TraceOptions& opt = {});

struct ScanRow {
    double s, x, y, r1, r2, mu, F;
    double F_minus_half = 0;              // alpha = 2 column
    double implied_r = 0, implied_E = 0;  // alpha = 1 columns
};

struct ScanReport {
    double alpha = 0, C = 0, v = 0;
    std::vector<ScanRow> rows;
    double F_min = 0, F_max = 0, F_spread = 0;
    double E_min = 0, E_max = 0, E_spread = 0;  // alpha = 1 only
};

// Evaluates the necessary-condition right side F at every contour node; for
// alpha = 2 reports the spread of F - 1/2, for alpha = 1 the implied size
// r = F and the implied energy E(s). A nonzero spread on a constant-mu
// contour is the conjecture-consistent outcome.
ScanReport scan_necessary_condition(const Masses& m, double alpha, const Contour& c, double C,
                                    double v);

struct FlowPath {
    std::vector<double> tau;
    std::vector<shape::ShapePoint> points;
};

// Integrates d eta/d tau = constant_mu_velocity; the path stays on the
// level set of the seed and retraces the contour geometrically.
FlowPath constant_mu_flow(const Masses& m, double alpha, shape::ShapePoint seed, double v,
                          double tau_span, int n_samples = 500);

}  // namespace saari::analysis
