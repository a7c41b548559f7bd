#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>

#include "saari/analysis.hpp"
#include "saari/asymptotics.hpp"
#include "saari/bipolar.hpp"
#include "saari/core_model.hpp"
#include "saari/dynamics.hpp"

namespace py = pybind11;
using namespace saari;

namespace {

Masses masses_of(std::array<double, 3> m) { return {m[0], m[1], m[2]}; }

py::dict series_dict(const asym::SeriesD& s) {
    py::dict out;
    for (int k = s.k0; k <= s.kmax && k < s.k0 + static_cast<int>(s.coef.size()); ++k)
        out[py::int_(k)] = s.coeff(k);
    return out;
}

py::dict trajectory_dict(const std::vector<dynamics::TrajectorySample>& traj) {
    py::list t, r, phi, eta, rdot, phidot, etadot, I, U, K, E, C, mu, v2;
    for (const auto& s : traj) {
        t.append(s.t);
        r.append(s.state.r);
        phi.append(s.state.phi);
        eta.append(s.state.eta);
        rdot.append(s.state.rdot);
        phidot.append(s.state.phidot);
        etadot.append(s.state.etadot);
        I.append(s.I);
        U.append(s.U);
        K.append(s.K);
        E.append(s.E);
        C.append(s.C);
        mu.append(s.mu);
        v2.append(s.v2);
    }
    py::dict out;
    out["t"] = t;
    out["r"] = r;
    out["phi"] = phi;
    out["eta"] = eta;
    out["rdot"] = rdot;
    out["phidot"] = phidot;
    out["etadot"] = etadot;
    out["I"] = I;
    out["U"] = U;
    out["K"] = K;
    out["E"] = E;
    out["C"] = C;
    out["mu"] = mu;
    out["v2"] = v2;
    return out;
}

ReducedState reduced_of(const py::dict& d) {
    ReducedState s;
    if (d.contains("r")) s.r = d["r"].cast<double>();
    if (d.contains("phi")) s.phi = d["phi"].cast<double>();
    if (d.contains("eta")) s.eta = d["eta"].cast<Complex>();
    if (d.contains("rdot")) s.rdot = d["rdot"].cast<double>();
    if (d.contains("phidot")) s.phidot = d["phidot"].cast<double>();
    if (d.contains("etadot")) s.etadot = d["etadot"].cast<Complex>();
    return s;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "reduced planar three-body dynamics, shape-sphere geometry and "
                "constant-mu branch verification";

    py::register_exception<ConfigError>(mod, "ConfigError", PyExc_ValueError);

    mod.def(
        "config_measure",
        [](std::array<double, 3> m, double alpha, Complex eta) {
            return core::config_measure_eta(masses_of(m), alpha, eta);
        },
        py::arg("masses"), py::arg("alpha"), py::arg("eta"));

    mod.def(
        "scalars",
        [](std::array<double, 3> m, double alpha, Complex eta) {
            auto s = shape::scalars(masses_of(m), alpha, {eta.real(), eta.imag()});
            py::dict out;
            out["mu"] = s.mu;
            out["grad_norm2"] = s.grad_norm2;
            out["laplacian"] = s.laplacian;
            out["lambda"] = s.lambda;
            return out;
        },
        py::arg("masses"), py::arg("alpha"), py::arg("eta"));

    mod.def(
        "necessary_rhs",
        [](std::array<double, 3> m, double alpha, Complex eta, double C, double v) {
            return shape::necessary_rhs(masses_of(m), alpha, {eta.real(), eta.imag()}, C, v);
        },
        py::arg("masses"), py::arg("alpha"), py::arg("eta"), py::arg("C"), py::arg("v"));

    mod.def(
        "central_configs",
        [](std::array<double, 3> m, double alpha) {
            auto set = analysis::find_central_configs(masses_of(m), alpha);
            py::list out;
            for (const auto& cc : set.configs) {
                py::dict d;
                d["eta"] = cc.eta;
                d["type"] = analysis::to_string(cc.type);
                d["grad_norm"] = cc.grad_norm;
                d["seed_hits"] = cc.seed_hits;
                out.append(d);
            }
            return out;
        },
        py::arg("masses"), py::arg("alpha"));

    mod.def(
        "contour_scan",
        [](std::array<double, 3> m, double alpha, double mu_level, Complex seed, double C,
           double v, double step, int max_nodes) {
            Masses mm = masses_of(m);
            analysis::TraceOptions opt;
            opt.step = step;
            opt.max_nodes = max_nodes;
            auto c = analysis::trace_mu_contour(mm, alpha, mu_level,
                                                {seed.real(), seed.imag()}, opt);
            auto rep = analysis::scan_necessary_condition(mm, alpha, c, C, v);
            py::list s, x, y, r1, r2, mu, F, implied_E;
            for (const auto& row : rep.rows) {
                s.append(row.s);
                x.append(row.x);
                y.append(row.y);
                r1.append(row.r1);
                r2.append(row.r2);
                mu.append(row.mu);
                F.append(row.F);
                if (alpha == 1.0) implied_E.append(row.implied_E);
            }
            py::dict out;
            out["closed"] = c.closed;
            out["perimeter"] = c.perimeter;
            out["s"] = s;
            out["x"] = x;
            out["y"] = y;
            out["r1"] = r1;
            out["r2"] = r2;
            out["mu"] = mu;
            out["F"] = F;
            out["F_spread"] = rep.F_spread;
            if (alpha == 1.0) {
                out["implied_E"] = implied_E;
                out["E_spread"] = rep.E_spread;
            }
            return out;
        },
        py::arg("masses"), py::arg("alpha"), py::arg("mu_level"), py::arg("seed"),
        py::arg("C") = 0.0, py::arg("v") = 1.0, py::arg("step") = 1e-2,
        py::arg("max_nodes") = 100000);

    mod.def(
        "integrate",
        [](std::array<double, 3> m, double alpha, const py::dict& initial,
           std::pair<double, double> tspan, double tol, int samples) {
            IntegratorConfig cfg;
            cfg.rel_tol = tol;
            cfg.abs_tol = tol * 1e-2;
            return trajectory_dict(dynamics::integrate(masses_of(m), alpha, reduced_of(initial),
                                                       tspan, cfg, samples));
        },
        py::arg("masses"), py::arg("alpha"), py::arg("initial"), py::arg("tspan"),
        py::arg("tol") = 1e-10, py::arg("samples") = 200);

    mod.def(
        "branch_strong",
        [](std::array<double, 3> m, double mu_tilde, int branch, int order) {
            auto [s1, s2] = asym::branch_expansion_strong(masses_of(m), mu_tilde, branch, order);
            return py::make_tuple(series_dict(s1), series_dict(s2));
        },
        py::arg("masses"), py::arg("mu_tilde"), py::arg("branch"), py::arg("order") = 12);

    mod.def(
        "branch_newton",
        [](std::array<double, 3> m, double mu_tilde, int sign, int which, int order) {
            auto [r1, r2] =
                asym::branch_expansion_newton(masses_of(m), mu_tilde, sign, which, order);
            return py::make_tuple(series_dict(r1), series_dict(r2));
        },
        py::arg("masses"), py::arg("mu_tilde"), py::arg("sign"), py::arg("which"),
        py::arg("order") = 12);

    mod.def(
        "verify_strong_json",
        [](std::array<double, 3> m, double mu_tilde, double C, double v, int digits, int order) {
            return asym::verify_strong(masses_of(m), mu_tilde, C, v, digits, order).to_json();
        },
        py::arg("masses"), py::arg("mu_tilde"), py::arg("C"), py::arg("v"),
        py::arg("digits") = 50, py::arg("order") = 8);

    mod.def(
        "verify_newton_json",
        [](std::array<double, 3> m, double mu_tilde, double C, double v, int digits, int order) {
            return asym::verify_newton(masses_of(m), mu_tilde, C, v, digits, order).to_json();
        },
        py::arg("masses"), py::arg("mu_tilde"), py::arg("C"), py::arg("v"),
        py::arg("digits") = 50, py::arg("order") = 8);
}
