#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "saari/analysis.hpp"
#include "saari/asymptotics.hpp"
#include "saari/bipolar.hpp"
#include "saari/core_model.hpp"
#include "saari/dynamics.hpp"

using nlohmann::json;
using namespace saari;

namespace {

// exit codes: 0 ok, 2 config, 3 collision, 4 critical point, 5 precision,
// 6 verification failure

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

// the output path is plumbing, not run semantics: drop it before hashing
std::string hash_hex(json cfg) {
    cfg.erase("out");
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(cfg.dump())));
    return buf;
}

void check_keys(const json& j, const std::vector<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
            throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

double getd(const json& j, const char* key, double dflt) {
    if (!j.contains(key)) return dflt;
    if (!j[key].is_number()) throw ConfigError(std::string(key) + " must be a number");
    return j[key].get<double>();
}

std::array<double, 2> get2(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ConfigError(where + " must be a pair of numbers");
    return {j[0].get<double>(), j[1].get<double>()};
}

struct OutFile {
    std::ofstream file;
    std::ostream& stream;
    explicit OutFile(const std::string& path) : stream(path.empty() ? std::cout : file) {
        if (!path.empty()) {
            file.open(path);
            if (!file) throw ConfigError("cannot open output file " + path);
        }
    }
};

// shared run parameters, file config overridden by explicitly set flags
struct Run {
    json cfg = json::object();
    std::vector<double> masses_flag, tspan_flag;
    double alpha = 0, mu_level = 0, C = 0, v = 0, mu_tilde = 0, tol = 0;
    int order = 0, digits = 0;
    std::string config_path, out_flag;
    CLI::App* sub = nullptr;

    void add_options(CLI::App& s) {
        sub = &s;
        s.add_option("--config", config_path, "JSON run configuration");
        s.add_option("--masses", masses_flag, "three positive masses")->expected(3);
        s.add_option("--alpha", alpha, "potential exponent");
        s.add_option("--mu-level", mu_level, "contour level of mu");
        s.add_option("--C", C, "angular momentum");
        s.add_option("--v", v, "shape speed");
        s.add_option("--mu-tilde", mu_tilde, "eliminated constant of the branch family");
        s.add_option("--order", order, "series truncation order");
        s.add_option("--digits", digits, "working precision in decimal digits");
        s.add_option("--tol", tol, "integrator relative tolerance");
        s.add_option("--tspan", tspan_flag, "integration interval")->expected(2);
        s.add_option("--out", out_flag, "output path (default stdout)");
    }

    // merge file + flags into cfg, keeping only keys the command knows
    void load(const std::vector<std::string>& allowed) {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw ConfigError("cannot open config file " + config_path);
            try {
                cfg = json::parse(in);
            } catch (const json::exception& e) {
                throw ConfigError(std::string("config parse error: ") + e.what());
            }
        }
        check_keys(cfg, allowed, "config");
        auto set = [&](const char* key, const std::string& flag, auto value) {
            if (sub->count(flag)) cfg[key] = value;
        };
        set("masses", "--masses", masses_flag);
        set("alpha", "--alpha", alpha);
        set("mu_level", "--mu-level", mu_level);
        set("C", "--C", C);
        set("v", "--v", v);
        set("mu_tilde", "--mu-tilde", mu_tilde);
        set("order", "--order", order);
        set("digits", "--digits", digits);
        set("tol", "--tol", tol);
        set("tspan", "--tspan", tspan_flag);
        set("out", "--out", out_flag);
    }

    Masses masses() const {
        if (!cfg.contains("masses")) return {1, 1, 1};
        const json& j = cfg["masses"];
        if (!j.is_array() || j.size() != 3) throw ConfigError("masses must be a 3-array");
        return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
    }

    std::string out() const { return cfg.value("out", std::string()); }
};

ReducedState reduced_from_json(const json& j) {
    check_keys(j, {"r", "phi", "eta", "rdot", "phidot", "etadot"}, "initial.reduced");
    ReducedState s;
    s.r = getd(j, "r", 1.0);
    s.phi = getd(j, "phi", 0.0);
    s.rdot = getd(j, "rdot", 0.0);
    s.phidot = getd(j, "phidot", 0.0);
    if (j.contains("eta")) {
        auto e = get2(j["eta"], "eta");
        s.eta = {e[0], e[1]};
    }
    if (j.contains("etadot")) {
        auto e = get2(j["etadot"], "etadot");
        s.etadot = {e[0], e[1]};
    }
    return s;
}

CartesianState cartesian_from_json(const json& j) {
    check_keys(j, {"q", "qdot"}, "initial.cartesian");
    if (!j.contains("q") || !j.contains("qdot")) throw ConfigError("cartesian needs q and qdot");
    CartesianState s;
    for (int k = 0; k < 3; ++k) {
        auto q = get2(j["q"].at(k), "q");
        auto qd = get2(j["qdot"].at(k), "qdot");
        s.q[k] = {q[0], q[1]};
        s.qdot[k] = {qd[0], qd[1]};
    }
    return s;
}

// circular homographic motion launched at the Lagrange shape: the default
// simulate initial state when none is configured
ReducedState lagrange_circular(const Masses& m, double alpha) {
    ReducedState s;
    s.r = 1;
    s.eta = bipolar::eta_from_bipolar(m, {1, 1}, +1);
    double mu = core::config_measure_eta(m, alpha, s.eta);
    s.phidot = std::sqrt(mu / alpha);
    return s;
}

json reduced_to_json(const ReducedState& s) {
    return {{"r", s.r},
            {"phi", s.phi},
            {"eta", {s.eta.real(), s.eta.imag()}},
            {"rdot", s.rdot},
            {"phidot", s.phidot},
            {"etadot", {s.etadot.real(), s.etadot.imag()}}};
}

int cmd_simulate(Run& run) {
    run.load({"masses", "alpha", "tspan", "tol", "samples", "initial", "out"});
    Masses m = run.masses();
    double alpha = getd(run.cfg, "alpha", 1.0);
    std::pair<double, double> tspan{0, 10};
    if (run.cfg.contains("tspan")) {
        auto t = get2(run.cfg["tspan"], "tspan");
        tspan = {t[0], t[1]};
    }
    IntegratorConfig icfg;
    icfg.rel_tol = getd(run.cfg, "tol", 1e-12);
    icfg.abs_tol = icfg.rel_tol * 1e-2;
    int samples = static_cast<int>(getd(run.cfg, "samples", 1000));
    if (samples < 2) throw ConfigError("samples must be at least 2");

    bool use_cartesian = false;
    ReducedState red;
    CartesianState cart;
    if (run.cfg.contains("initial")) {
        const json& init = run.cfg["initial"];
        check_keys(init, {"reduced", "cartesian"}, "initial");
        if (init.contains("cartesian")) {
            use_cartesian = true;
            cart = cartesian_from_json(init["cartesian"]);
        } else if (init.contains("reduced")) {
            red = reduced_from_json(init["reduced"]);
        } else {
            throw ConfigError("initial needs a reduced or cartesian block");
        }
    } else {
        red = lagrange_circular(m, alpha);
    }

    std::vector<dynamics::TrajectorySample> traj;
    bool collided = false;
    double t_stop = 0;
    auto integrate_any = [&](std::pair<double, double> span, const IntegratorConfig& c, int n) {
        return use_cartesian ? dynamics::integrate(m, alpha, cart, span, c, n)
                             : dynamics::integrate(m, alpha, red, span, c, n);
    };
    try {
        traj = integrate_any(tspan, icfg, samples);
    } catch (const CollisionStop& e) {
        // rerun up to the last sample time before the stop so the partial
        // trajectory is still written on the original uniform grid
        collided = true;
        t_stop = e.t_stop;
        double dt = (tspan.second - tspan.first) / (samples - 1);
        int n_part = static_cast<int>((e.t_stop - tspan.first) / dt) + 1;
        if (n_part >= 2) {
            IntegratorConfig nostop = icfg;
            nostop.collision_stop = false;
            traj = integrate_any({tspan.first, tspan.first + (n_part - 1) * dt}, nostop, n_part);
        }
    }

    OutFile out(run.out());
    out.stream << "t,r,phi,eta_x,eta_y,rdot,phidot,etadot_x,etadot_y,I,U,K,E,C,mu,v2\n";
    for (const auto& s : traj) {
        const ReducedState& r = s.state;
        out.stream << fmt(s.t) << ',' << fmt(r.r) << ',' << fmt(r.phi) << ','
                   << fmt(r.eta.real()) << ',' << fmt(r.eta.imag()) << ',' << fmt(r.rdot) << ','
                   << fmt(r.phidot) << ',' << fmt(r.etadot.real()) << ',' << fmt(r.etadot.imag())
                   << ',' << fmt(s.I) << ',' << fmt(s.U) << ',' << fmt(s.K) << ',' << fmt(s.E)
                   << ',' << fmt(s.C) << ',' << fmt(s.mu) << ',' << fmt(s.v2) << '\n';
    }
    json meta{{"config_hash", hash_hex(run.cfg)}, {"rows", traj.size()}};
    if (collided) meta["collision_t"] = t_stop;
    out.stream << "# " << meta.dump() << '\n';
    return collided ? 3 : 0;
}

int cmd_central_configs(Run& run) {
    run.load({"masses", "alpha", "out"});
    Masses m = run.masses();
    double alpha = getd(run.cfg, "alpha", 1.0);
    auto set = analysis::find_central_configs(m, alpha);
    json entries = json::array();
    for (const auto& cc : set.configs)
        entries.push_back({{"eta", {cc.eta.real(), cc.eta.imag()}},
                           {"type", analysis::to_string(cc.type)},
                           {"grad_norm", cc.grad_norm},
                           {"seed_hits", cc.seed_hits}});
    json doc{{"configs", entries},
             {"stalled_seeds", set.stalled_seeds},
             {"config_hash", hash_hex(run.cfg)}};
    OutFile out(run.out());
    out.stream << doc.dump(2) << '\n';
    return 0;
}

int cmd_contour_scan(Run& run) {
    run.load({"masses", "alpha", "mu_level", "C", "v", "seed", "step", "max_nodes", "out"});
    Masses m = run.masses();
    double alpha = getd(run.cfg, "alpha", 2.0);
    double C = getd(run.cfg, "C", 0.0);
    double v = getd(run.cfg, "v", 1.0);
    double mu_level = getd(run.cfg, "mu_level", 3.5);
    analysis::TraceOptions opt;
    opt.step = getd(run.cfg, "step", opt.step);
    opt.max_nodes = static_cast<int>(getd(run.cfg, "max_nodes", opt.max_nodes));
    shape::ShapePoint seed{0, 0};
    if (run.cfg.contains("seed")) {
        auto s = get2(run.cfg["seed"], "seed");
        seed = {s[0], s[1]};
    } else {
        Complex lag = bipolar::eta_from_bipolar(m, {1, 1}, +1);
        seed = {lag.real() + 0.05, lag.imag() + 0.05};
    }

    OutFile out(run.out());
    bool strong = alpha == 2.0;
    out.stream << (strong ? "s,x,y,r1,r2,mu,F,F_minus_half\n"
                          : "s,x,y,r1,r2,mu,F,implied_r,implied_E\n");
    json meta{{"config_hash", hash_hex(run.cfg)}};
    int code = 0;
    try {
        analysis::Contour c = analysis::trace_mu_contour(m, alpha, mu_level, seed, opt);
        auto rep = analysis::scan_necessary_condition(m, alpha, c, C, v);
        for (const auto& r : rep.rows) {
            out.stream << fmt(r.s) << ',' << fmt(r.x) << ',' << fmt(r.y) << ',' << fmt(r.r1)
                       << ',' << fmt(r.r2) << ',' << fmt(r.mu) << ',' << fmt(r.F);
            if (strong)
                out.stream << ',' << fmt(r.F_minus_half);
            else
                out.stream << ',' << fmt(r.implied_r) << ',' << fmt(r.implied_E);
            out.stream << '\n';
        }
        meta["closed"] = c.closed;
        meta["nodes"] = c.nodes.size();
        meta["perimeter"] = c.perimeter;
        meta["F_min"] = rep.F_min;
        meta["F_max"] = rep.F_max;
        meta["F_spread"] = rep.F_spread;
        if (alpha == 1.0) {
            meta["E_min"] = rep.E_min;
            meta["E_max"] = rep.E_max;
            meta["E_spread"] = rep.E_spread;
        }
    } catch (const CriticalPointEncounter& e) {
        meta["error"] = e.what();
        code = 4;
    } catch (const CriticalPoint& e) {
        meta["error"] = e.what();
        code = 4;
    }
    out.stream << "# " << meta.dump() << '\n';
    return code;
}

int cmd_verify_proof(Run& run) {
    run.load({"masses", "alpha", "mu_tilde", "C", "v", "digits", "order", "triples", "out"});
    double alpha = getd(run.cfg, "alpha", 2.0);
    if (alpha != 1.0 && alpha != 2.0)
        throw ConfigError("verify-proof supports alpha = 1 or alpha = 2 only");
    double mu_tilde = getd(run.cfg, "mu_tilde", 40.0);
    double C = getd(run.cfg, "C", 1.0);
    double v = getd(run.cfg, "v", 1.0);
    int digits = static_cast<int>(getd(run.cfg, "digits", 50));
    int order = static_cast<int>(getd(run.cfg, "order", 8));

    std::vector<Masses> triples;
    if (run.cfg.contains("triples")) {
        for (const auto& t : run.cfg["triples"]) {
            if (!t.is_array() || t.size() != 3) throw ConfigError("each triple must be a 3-array");
            triples.push_back({t[0].get<double>(), t[1].get<double>(), t[2].get<double>()});
        }
        if (triples.empty()) throw ConfigError("triples must be non-empty");
    } else {
        triples.push_back(run.masses());
    }

    json reports = json::array();
    bool all_pass = true;
    for (const Masses& m : triples) {
        asym::ExpansionReport rep = alpha == 2.0
                                        ? asym::verify_strong(m, mu_tilde, C, v, digits, order)
                                        : asym::verify_newton(m, mu_tilde, C, v, digits, order);
        all_pass = all_pass && rep.pass;
        reports.push_back(json::parse(rep.to_json()));
    }
    OutFile out(run.out());
    if (reports.size() == 1) {
        json doc = reports[0];
        doc["config_hash"] = hash_hex(run.cfg);
        out.stream << doc.dump(2) << '\n';
    } else {
        json doc{{"reports", reports}, {"pass", all_pass}, {"config_hash", hash_hex(run.cfg)}};
        out.stream << doc.dump(2) << '\n';
    }
    return all_pass ? 0 : 6;
}

int cmd_reduce(Run& run) {
    run.load({"masses", "state", "out"});
    Masses m = run.masses();
    if (!run.cfg.contains("state")) throw ConfigError("reduce needs a state block");
    const json& st = run.cfg["state"];
    check_keys(st, {"reduced", "cartesian"}, "state");
    json doc;
    if (st.contains("cartesian")) {
        CartesianState cart = cartesian_from_json(st["cartesian"]);
        doc["reduced"] = reduced_to_json(core::reduced_from_cartesian(m, cart));
    } else if (st.contains("reduced")) {
        ReducedState red = reduced_from_json(st["reduced"]);
        CartesianState cart = core::cartesian_from_reduced(m, red);
        json q = json::array(), qd = json::array();
        for (int k = 0; k < 3; ++k) {
            q.push_back({cart.q[k].real(), cart.q[k].imag()});
            qd.push_back({cart.qdot[k].real(), cart.qdot[k].imag()});
        }
        doc["cartesian"] = {{"q", q}, {"qdot", qd}};
    } else {
        throw ConfigError("state needs a reduced or cartesian block");
    }
    doc["config_hash"] = hash_hex(run.cfg);
    OutFile out(run.out());
    out.stream << doc.dump(2) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"reduced planar three-body dynamics and constant-mu analysis"};
    app.require_subcommand(1);

    Run runs[5];
    auto* simulate = app.add_subcommand("simulate", "integrate a trajectory to CSV");
    auto* central = app.add_subcommand("central-configs", "find the critical points of mu");
    auto* contour = app.add_subcommand("contour-scan", "trace a mu contour and scan F along it");
    auto* verify = app.add_subcommand("verify-proof", "verify the branch-series coefficients");
    auto* reduce = app.add_subcommand("reduce", "convert Cartesian <-> reduced states");
    runs[0].add_options(*simulate);
    runs[1].add_options(*central);
    runs[2].add_options(*contour);
    runs[3].add_options(*verify);
    runs[4].add_options(*reduce);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(runs[0]);
        if (central->parsed()) return cmd_central_configs(runs[1]);
        if (contour->parsed()) return cmd_contour_scan(runs[2]);
        if (verify->parsed()) return cmd_verify_proof(runs[3]);
        if (reduce->parsed()) return cmd_reduce(runs[4]);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const CollisionStop& e) {
        std::cerr << "collision at t = " << e.t_stop << '\n';
        return 3;
    } catch (const CriticalPointEncounter& e) {
        std::cerr << e.what() << '\n';
        return 4;
    } catch (const CriticalPoint& e) {
        std::cerr << e.what() << '\n';
        return 4;
    } catch (const PrecisionExhausted& e) {
        std::cerr << e.what() << '\n';
        return 5;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
