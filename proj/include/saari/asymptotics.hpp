#pragma once

#include <string>
#include <utility>
#include <vector>

#include "saari/laurent.hpp"
#include "saari/types.hpp"

// Truncated-series expansions of the constant-mu branches near the two-body
// limit rho -> 0 and the mechanical verification of every leading exponent
// and coefficient in the contradiction arguments for alpha = 2 and alpha = 1.
//
// All internal arithmetic runs directly in rho: the branch series have their
// nearest singularity at rho of order one, so rho-coefficients stay bounded
// across the retained window while any rescaling makes them grow geometrically.
namespace saari::asym {

using Cx = std::complex<double>;
using SeriesD = Laurent<Cx>;

// (r1^2(rho), r2^2(rho)) for the inverse-square force; branch 2 is the
// m1 <-> m2 relabeling image of branch 1.
std::pair<SeriesD, SeriesD> branch_expansion_strong(const Masses& m, double mu_tilde, int branch,
                                                    int order = 12);

// (r1(rho), r2(rho)) for the inverse force; sign in {+1,-1} picks the root
// pair, which=2 applies the (1<->2) exchange.
std::pair<SeriesD, SeriesD> branch_expansion_newton(const Masses& m, double mu_tilde, int sign,
                                                    int which, int order = 12);

struct Comparison {
    std::string quantity;
    int branch = 0;
    int exponent_expected = 0;
    int exponent_found = 0;
    Cx expected{};
    Cx found{};
    double rel_err = 0;
    double tol = 0;
    bool pass = false;
    std::string note;
};

struct ExpansionReport {
    std::string mode;  // "strong" or "newton"
    double m1 = 0, m2 = 0, m3 = 0;
    double mu_tilde = 0, C = 0, v = 0;
    int digits = 0, order = 0;
    bool grad_branch_flipped = false;
    std::vector<Comparison> checks;
    bool pass = false;

    std::string to_json() const;
};

// alpha = 2: on both branches the necessary-condition series F(rho) has no
// rho^0 or rho^1 term and a nonzero rho^2 coefficient matching the closed
// form, so F != 1/2 identically.
ExpansionReport verify_strong(const Masses& m, double mu_tilde, double C, double v,
                              int digits = 50, int order = 8);

// alpha = 1: on all four branches the leading exponents/coefficients of
// 1/|grad mu|^2, lambda, Delta mu, r = F and E are confirmed, with the E
// coefficient nonzero, so E cannot be constant.
ExpansionReport verify_newton(const Masses& m, double mu_tilde, double C, double v,
                              int digits = 50, int order = 8);

// The time-derivative chain of one inverse-force branch, in the rho variable:
// r(rho) = F, drho/dt = (v / (r^2 |grad mu|)) D rho, d mu/dt (zero series up
// to roundoff), and the energy series E(rho).
struct NewtonTimeSeries {
    SeriesD r1, r2;
    SeriesD F;
    SeriesD drho_dt;
    SeriesD dmu_dt;
    SeriesD energy;
};
NewtonTimeSeries newton_time_series(const Masses& m, double mu_tilde, double C, double v,
                                    int sign, int which, int order = 12);

}  // namespace saari::asym
