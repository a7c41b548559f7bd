#include "saari/asymptotics.hpp"

#include <boost/multiprecision/cpp_complex.hpp>
#include <cmath>
#include <functional>
#include <json.hpp>

#include "saari/bipolar.hpp"
#include "saari/dual2.hpp"

namespace saari {

template <>
struct field_traits<boost::multiprecision::cpp_complex_50> {
    using real_type = boost::multiprecision::cpp_bin_float_50;
};
template <>
struct field_traits<boost::multiprecision::cpp_complex_100> {
    using real_type = boost::multiprecision::cpp_bin_float_100;
};

}  // namespace saari

namespace saari::asym {

namespace {

using C50 = boost::multiprecision::cpp_complex_50;
using C100 = boost::multiprecision::cpp_complex_100;

struct CapGuard {
    int saved;
    explicit CapGuard(int cap) : saved(laurent_cap) { laurent_cap = cap; }
    ~CapGuard() { laurent_cap = saved; }
};

template <class C>
Cx to_cx(const C& c) {
    return {static_cast<double>(c.real()), static_cast<double>(c.imag())};
}
inline Cx to_cx(const Cx& c) { return c; }

template <class C>
SeriesD to_double_series(const Laurent<C>& a) {
    SeriesD r;
    r.k0 = a.k0;
    r.kmax = a.kmax;
    r.coef.reserve(a.coef.size());
    for (const auto& c : a.coef) r.coef.push_back(to_cx(c));
    return r;
}

template <class C>
Laurent<C> newton_solve(const std::function<Laurent<C>(const Laurent<C>&)>& f,
                        const std::function<Laurent<C>(const Laurent<C>&)>& fp, Laurent<C> s,
                        int target_order) {
    for (int it = 0; it < 40; ++it) {
        Laurent<C> corr;
        try {
            corr = (f(s) / fp(s)).trimmed();
        } catch (const PrecisionExhausted&) {
            return s;
        }
        // converged once the correction is roundoff relative to the iterate
        if (corr.is_zero() || corr.max_mag() <= detail::trim_tol<C>() * s.max_mag()) return s;
        s = (s - corr).trimmed();
        if (corr.k0 > s.k0 + target_order) return s;
    }
    throw NewtonDivergence("series Newton iteration failed to reach the requested order");
}

Masses swapped(const Masses& m) { return {m.m2, m.m1, m.m3}; }

// quadratic elimination for the inverse-square force, in rho with nu = mu~/rho;
// returns the (s1, s2) = (r1^2, r2^2) branch-1 series.  The branch series have
// mass-sized coefficient ratios in rho (nearest singularity at rho ~ 1), so rho
// itself is the safe working variable for the relative-trim tolerance.
template <class C>
std::pair<Laurent<C>, Laurent<C>> strong_branch1(const Masses& m, double mu_tilde,
                                                 int target_order) {
    using L = Laurent<C>;
    // the atoms are the double-rounded pairwise products, exactly as the
    // scalar formulas fold them; composites are formed in working precision
    // so the on-branch cancellations hold to the series trim tolerance
    const C p12(m.m1 * m.m2), p23(m.m2 * m.m3), p31(m.m3 * m.m1);
    L nu = L::monomial(C(mu_tilde), -1);
    L rho = L::variable();
    L B = nu - L(p12);
    L a = -(L(p23) * (L(p12) - rho));
    L b = (L(p12) - rho) * B - L(pow_int(p23, 2)) + L(pow_int(p31, 2));
    L c = L(p23) * B;
    auto f = [&](const L& s) { return a * s * s + b * s + c; };
    auto fp = [&](const L& s) { return 2.0 * a * s + b; };
    L s1 = newton_solve<C>(f, fp, L(-p23 / p12), target_order);
    L s2 = (B - L(p23) * s1) / L(p31);
    return {s1, s2};
}

// quartic elimination for the inverse force, in rho with nu = (mu~/rho)^2;
// returns the (r1, r2) series for the requested sign
template <class C>
std::pair<Laurent<C>, Laurent<C>> newton_branch1(const Masses& m, double mu_tilde, int sign,
                                                 int target_order) {
    using L = Laurent<C>;
    using std::sqrt;
    // see strong_branch1: pairwise products stay double-rounded atoms, all
    // composites (powers, quotients, the seed) are formed in working precision;
    // the quartic has structurally exact cancellations (double root at rho = 0)
    // that otherwise pick up 1e-16 dirt above the series trim tolerance
    const C p12(m.m1 * m.m2), p23(m.m2 * m.m3), p31(m.m3 * m.m1), cmt(mu_tilde);
    L rho = L::variable();
    L nu = L::monomial(cmt * cmt, -2);
    L A = rho - L(p12);
    L d0 = L(p12) - nu;
    L lb2(p23), lk(pow_int(p31, 3));
    auto f = [&](const L& r) {
        L t = A * r - lb2;
        return (d0 + lb2 * r * r) * t * t + lk * r * r;
    };
    auto fp = [&](const L& r) {
        L t = A * r - lb2;
        return 2.0 * lb2 * r * t * t + (d0 + lb2 * r * r) * (2.0 * t * A) + 2.0 * lk * r;
    };
    C p = sqrt(pow_int(p31, 3));
    // the rho^0 part of the quartic has a double root at -p23/p12 = -m3/m1, so
    // the seed must already carry the O(rho) term that separates the two signs
    L seed = L(-p23 / p12)
             + L::monomial(-(p23 / p12) * (cmt + C(sign) * p) / (p12 * cmt), 1);
    L r1 = newton_solve<C>(f, fp, seed, target_order);
    L r2 = L(p31) / (A - lb2 / r1);
    return {r1, r2};
}

double rel_err(Cx expected, Cx found) {
    double ref = std::max(std::abs(expected), std::abs(found));
    if (ref == 0) return 0;
    return std::abs(expected - found) / ref;
}

// vanishing threshold relative to a reference magnitude (spec of the proof:
// coefficients that must cancel do so to ~working precision; 1e-20 relative
// is far below anything a surviving term could produce at >= 30 digits)
constexpr double kVanishTol = 1e-20;
constexpr double kCoeffTol = 1e-10;

// conv_base != 1 converts the rho-convention leading coefficient c_k into the
// (rho/mu_tilde)-bookkeeping value c_k * mu_tilde^k the closed forms use
template <class C>
Comparison check_coeff(const std::string& name, int branch, const Laurent<C>& series,
                       int expected_exponent, Cx expected_coeff, double conv_base = 1.0) {
    Comparison cmp;
    cmp.quantity = name;
    cmp.branch = branch;
    cmp.exponent_expected = expected_exponent;
    cmp.expected = expected_coeff;
    cmp.tol = kCoeffTol;
    if (std::abs(expected_coeff) < 1e-300) {
        // degenerate closed form: report the exponent shift instead of failing
        cmp.note = "closed-form leading coefficient vanishes; exponent shifted";
        try {
            cmp.exponent_found = series.leading_exponent();
            cmp.found = to_cx(series.leading_coeff()) * std::pow(conv_base, cmp.exponent_found);
            cmp.pass = cmp.exponent_found > expected_exponent;
        } catch (const PrecisionExhausted&) {
            cmp.exponent_found = series.kmax;
            cmp.pass = true;  // series vanished entirely below the O-bound
        }
        return cmp;
    }
    try {
        cmp.exponent_found = series.leading_exponent();
        cmp.found = to_cx(series.leading_coeff()) * std::pow(conv_base, cmp.exponent_found);
    } catch (const PrecisionExhausted&) {
        cmp.pass = false;
        cmp.note = "series is numerically zero";
        return cmp;
    }
    cmp.rel_err = rel_err(cmp.expected, cmp.found);
    cmp.pass = cmp.exponent_found == expected_exponent && cmp.rel_err < cmp.tol;
    return cmp;
}

template <class C>
Comparison check_vanishes(const std::string& name, int branch, const Laurent<C>& series,
                          int exponent, double ref_mag) {
    Comparison cmp;
    cmp.quantity = name;
    cmp.branch = branch;
    cmp.exponent_expected = exponent;
    cmp.exponent_found = exponent;
    cmp.tol = kVanishTol;
    double mag = detail::coeff_mag(series.coeff(exponent));
    cmp.found = to_cx(series.coeff(exponent));
    cmp.rel_err = mag / (ref_mag + 1e-300);
    cmp.pass = cmp.rel_err < kVanishTol;
    return cmp;
}

// ---- alpha = 2 -----------------------------------------------------------

Cx strong_rho2_coeff(const Masses& m, double mu_tilde, double C, double v) {
    // rho^2 coefficient of F on branch 1
    double M = m.total();
    double real_part =
        -v
        * (mu_tilde + m.m1 * m.m1 * (m.m2 * m.m2 + m.m2 * m.m3 - m.m3 * m.m3)
           + m.m1 * m.m2 * m.m3 * m.m3 + m.m2 * m.m2 * m.m3 * m.m3);
    double imag_part = 2 * C * m.m1 * m.m3 * std::sqrt(std::pow(m.m2, 3) * M);
    return M * v / (2 * m.m1 * m.m1 * m.m2 * m.m2 * mu_tilde * mu_tilde)
           * Cx(real_part, imag_part);
}

template <class C>
void verify_strong_impl(const Masses& m0, double mu_tilde, double Cmom, double v, int order,
                        ExpansionReport& rep) {
    CapGuard guard(2 * (order + 16));
    for (int branch : {1, 2}) {
        const Masses m = branch == 1 ? m0 : swapped(m0);
        auto [s1, s2] = strong_branch1<C>(m, mu_tilde, order + 8);
        // sigma = sqrt(rho) so the square roots of the half-integer branch exist
        Laurent<C> r1 = sqrt(s1.exponents_doubled());
        Laurent<C> r2 = sqrt(s2.exponents_doubled());
        auto sc = bipolar::scalars_t<Laurent<C>>(m, 2.0, r1, r2);

        // on-branch mu must reduce to the eliminated constant mu~/M
        rep.checks.push_back(
            check_coeff("mu_on_branch", branch, sc.mu, 0, Cx(mu_tilde / m.total(), 0)));

        Cx target = strong_rho2_coeff(m, mu_tilde, Cmom, v);
        bool flipped = false;
        Laurent<C> F;
        for (int attempt = 0; attempt < 2; ++attempt) {
            flipped = attempt == 1;
            F = bipolar::necessary_rhs_t<Laurent<C>>(sc, Cmom, v, flipped);
            Cx got = to_cx(F.coeff(4));
            if (rel_err(target, got) < kCoeffTol) break;
        }
        rep.grad_branch_flipped = flipped;

        double ref = detail::coeff_mag(F.coeff(4));
        // everything below sigma^4 = rho^2 must cancel; odd sigma powers do so
        // because F is a function of (r1^2, r2^2) = (sigma-even, sigma-even)
        for (int k = std::min(F.k0, 0); k < 4; ++k) {
            const char* name = k % 2 != 0 ? "F_odd_sigma"
                               : k == 0   ? "F_rho0"
                               : k == 2   ? "F_rho1"
                                          : "F_sigma_negative";
            rep.checks.push_back(check_vanishes(name, branch, F, k, ref));
        }
        Comparison c2 = check_coeff("F_rho2", branch, F.trimmed(), 4, target);
        // sigma = sqrt(rho), so report the exponent in the rho convention
        c2.exponent_expected = 2;
        if (c2.exponent_found == 4) c2.exponent_found = 2;
        rep.checks.push_back(c2);

        Comparison contra;
        contra.quantity = "F_not_identically_half";
        contra.branch = branch;
        contra.expected = Cx(0.5, 0);
        contra.found = to_cx(F.coeff(0));
        contra.tol = kCoeffTol;
        contra.pass = c2.pass && std::abs(c2.found) > kCoeffTol;
        contra.note = "rho^2 term nonzero, so F cannot equal 1/2 on the branch";
        rep.checks.push_back(contra);
    }
}

// ---- alpha = 1 -----------------------------------------------------------

template <class C>
struct NewtonBranchData {
    Laurent<C> r1, r2;    // in x, frame of the masses passed in
    Laurent<C> inv_grad2, lambda, lap, mu;
    Laurent<C> F, drho_dt, dmu_dt, energy;
};

template <class C>
NewtonBranchData<C> newton_branch_data(const Masses& m, double mu_tilde, double Cmom, double v,
                                       int sign, int order) {
    using L = Laurent<C>;
    NewtonBranchData<C> d;
    auto [r1, r2] = newton_branch1<C>(m, mu_tilde, sign, order + 10);
    d.r1 = r1;
    d.r2 = r2;
    auto sc = bipolar::scalars_t<L>(m, 1.0, r1, r2);
    d.mu = sc.mu;
    d.inv_grad2 = inv(sc.grad2);
    d.lambda = sc.lambda;
    d.lap = sc.lap;
    d.F = bipolar::necessary_rhs_t<L>(sc, Cmom, v, false);

    // d/dt = (v / (r^2 |grad mu|)) D with D f = (nu^2 sqrt(R) / (2 m1 m2 m3 M
    // r1 r2)) (mu_1 f_2 - mu_2 f_1); here f = rho = mu~ x
    const double mm = m.m1 * m.m2 * m.m3 * m.total();
    L nu = bipolar::nu_of(m, r1, r2);
    L sqrtR = sqrt(bipolar::chart_radicand(r1, r2));
    L dpref = nu * nu * sqrtR / (2.0 * mm * r1 * r2);
    L rho1 = -m.m2 * m.m3 / (r1 * r1);
    L rho2 = -m.m3 * m.m1 / (r2 * r2);
    L grad = sqrt(sc.grad2);
    L time_pref = v / (d.F * d.F * grad);
    d.drho_dt = time_pref * dpref * (sc.mu1 * rho2 - sc.mu2 * rho1);
    d.dmu_dt = time_pref * dpref * (sc.mu1 * sc.mu2 - sc.mu2 * sc.mu1);

    // E = rdot^2/2 + (C^2 + v^2)/(2 r^2) - mu / r with r = F and
    // rdot = (dF/dx) (dx/dt), dx/dt = drho_dt / mu~
    L rdot = d.F.derivative() * d.drho_dt;
    d.energy = rdot * rdot / 2.0 + (Cmom * Cmom + v * v) / (2.0 * d.F * d.F) - d.mu / d.F;
    return d;
}

template <class C>
void verify_newton_impl(const Masses& m0, double mu_tilde, double Cmom, double v, int order,
                        ExpansionReport& rep) {
    CapGuard guard(order + 16);
    int branch_id = 0;
    for (int which : {1, 2}) {
        const Masses m = which == 1 ? m0 : swapped(m0);
        for (int sign : {+1, -1}) {
            ++branch_id;
            auto d = newton_branch_data<C>(m, mu_tilde, Cmom, v, sign, order);
            double M = m.total();
            double p = std::pow(m.m1 * m.m3, 1.5);
            double pm = mu_tilde + sign * p;  // mu~ +- (m1 m3)^{3/2}

            rep.checks.push_back(check_coeff("mu_on_branch", branch_id, d.mu, 0,
                                             Cx(mu_tilde / std::sqrt(M), 0)));
            rep.checks.push_back(check_coeff(
                "inv_grad2", branch_id, d.inv_grad2, 6,
                Cx(M * M * std::pow(m.m3, 3) / (std::pow(m.m1, 3) * m.m2), 0), mu_tilde));
            rep.checks.push_back(check_coeff(
                "lambda", branch_id, d.lambda, -10,
                Cx(3 * std::pow(m.m1, 4) * (-sign * p - mu_tilde)
                       / (2 * std::pow(m.m3, 6) * std::pow(M, 3.5)),
                   0),
                mu_tilde));
            rep.checks.push_back(check_coeff(
                "laplacian", branch_id, d.lap, -3,
                Cx(((m.m1 + m.m2) * std::pow(m.m3, 3) - std::pow(m.m1, 3) * (m.m2 + m.m3))
                       / (std::pow(m.m3, 3) * std::pow(M, 1.5)),
                   0),
                mu_tilde));
            rep.checks.push_back(check_coeff(
                "r_necessary", branch_id, d.F, 2,
                Cx(-3 * v * v * pm * std::sqrt(M) / (4 * m.m1 * m.m1 * m.m2 * m.m2), 0),
                mu_tilde));
            // (rho drho/dt / mu~^2)^2, the square of the size-motion rate
            Laurent<C> rate = d.drho_dt * d.drho_dt
                              * Laurent<C>::monomial(C(1 / std::pow(mu_tilde, 4)), 2);
            Cx rate_coeff(-64 * std::pow(m.m1, 9) * std::pow(m.m2, 7)
                              / (81 * std::pow(m.m3, 3) * M * M * M * std::pow(v, 6)
                                 * std::pow(pm, 4)),
                          0);
            rep.checks.push_back(
                check_coeff("rho_rate_squared", branch_id, rate, -8, rate_coeff, mu_tilde));
            // E leading term is rdot^2/2 alone; its coefficient is pinned by the
            // r(rho) and rate expansions above: 2 * c_r^2 * rate_coeff
            Cx e_coeff(-8 * std::pow(m.m1, 5) * std::pow(m.m2, 3)
                           / (9 * std::pow(m.m3, 3) * M * M * pm * pm * v * v),
                       0);
            Comparison ce = check_coeff("energy", branch_id, d.energy, -8, e_coeff, mu_tilde);
            rep.checks.push_back(ce);

            Comparison contra;
            contra.quantity = "energy_leading_nonzero";
            contra.branch = branch_id;
            contra.expected = e_coeff;
            contra.found = ce.found;
            contra.tol = kCoeffTol;
            contra.pass = ce.pass && std::abs(ce.found) > 1e-300;
            contra.note = "diverging E forbids a constant energy on the branch";
            rep.checks.push_back(contra);
        }
    }
}

template <class C>
ExpansionReport run_report(const std::string& mode, const Masses& m, double mu_tilde, double Cmom,
                           double v, int digits, int order) {
    ExpansionReport rep;
    rep.mode = mode;
    rep.m1 = m.m1;
    rep.m2 = m.m2;
    rep.m3 = m.m3;
    rep.mu_tilde = mu_tilde;
    rep.C = Cmom;
    rep.v = v;
    rep.digits = digits;
    rep.order = order;
    if (mode == "strong")
        verify_strong_impl<C>(m, mu_tilde, Cmom, v, order, rep);
    else
        verify_newton_impl<C>(m, mu_tilde, Cmom, v, order, rep);
    rep.pass = !rep.checks.empty();
    for (const auto& c : rep.checks) rep.pass = rep.pass && c.pass;
    return rep;
}

}  // namespace

std::pair<SeriesD, SeriesD> branch_expansion_strong(const Masses& m, double mu_tilde, int branch,
                                                    int order) {
    if (branch != 1 && branch != 2) throw ConfigError("branch must be 1 or 2");
    if (!(mu_tilde > 0)) throw ConfigError("mu_tilde must be positive");
    CapGuard guard(order + 16);
    const Masses mw = branch == 1 ? m : swapped(m);
    auto [s1, s2] = strong_branch1<C50>(mw, mu_tilde, order);
    if (branch == 2) std::swap(s1, s2);
    return {to_double_series(s1), to_double_series(s2)};
}

std::pair<SeriesD, SeriesD> branch_expansion_newton(const Masses& m, double mu_tilde, int sign,
                                                    int which, int order) {
    if (sign != 1 && sign != -1) throw ConfigError("sign must be +1 or -1");
    if (which != 1 && which != 2) throw ConfigError("which must be 1 or 2");
    if (!(mu_tilde > 0)) throw ConfigError("mu_tilde must be positive");
    CapGuard guard(order + 16);
    const Masses mw = which == 1 ? m : swapped(m);
    auto [r1, r2] = newton_branch1<C50>(mw, mu_tilde, sign, order);
    if (which == 2) std::swap(r1, r2);
    return {to_double_series(r1), to_double_series(r2)};
}

ExpansionReport verify_strong(const Masses& m, double mu_tilde, double C, double v, int digits,
                              int order) {
    if (!(mu_tilde > 0) || v == 0) throw ConfigError("need mu_tilde > 0 and v != 0");
    if (digits > 50) return run_report<C100>("strong", m, mu_tilde, C, v, 100, order);
    return run_report<C50>("strong", m, mu_tilde, C, v, 50, order);
}

ExpansionReport verify_newton(const Masses& m, double mu_tilde, double C, double v, int digits,
                              int order) {
    if (!(mu_tilde > 0) || v == 0) throw ConfigError("need mu_tilde > 0 and v != 0");
    if (digits > 50) return run_report<C100>("newton", m, mu_tilde, C, v, 100, order);
    return run_report<C50>("newton", m, mu_tilde, C, v, 50, order);
}

NewtonTimeSeries newton_time_series(const Masses& m, double mu_tilde, double C, double v,
                                    int sign, int which, int order) {
    if (sign != 1 && sign != -1) throw ConfigError("sign must be +1 or -1");
    if (which != 1 && which != 2) throw ConfigError("which must be 1 or 2");
    CapGuard guard(order + 16);
    const Masses mw = which == 1 ? m : swapped(m);
    auto d = newton_branch_data<C50>(mw, mu_tilde, C, v, sign, order);
    NewtonTimeSeries out;
    out.r1 = to_double_series(which == 1 ? d.r1 : d.r2);
    out.r2 = to_double_series(which == 1 ? d.r2 : d.r1);
    out.F = to_double_series(d.F);
    out.drho_dt = to_double_series(d.drho_dt);
    out.dmu_dt = to_double_series(d.dmu_dt);
    out.energy = to_double_series(d.energy);
    return out;
}

std::string ExpansionReport::to_json() const {
    nlohmann::json j;
    j["mode"] = mode;
    j["masses"] = {m1, m2, m3};
    j["mu_tilde"] = mu_tilde;
    j["C"] = C;
    j["v"] = v;
    j["digits"] = digits;
    j["order"] = order;
    j["grad_branch_flipped"] = grad_branch_flipped;
    j["pass"] = pass;
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks) {
        nlohmann::json jc;
        jc["quantity"] = c.quantity;
        jc["branch"] = c.branch;
        jc["exponent_expected"] = c.exponent_expected;
        jc["exponent_found"] = c.exponent_found;
        jc["expected"] = {c.expected.real(), c.expected.imag()};
        jc["found"] = {c.found.real(), c.found.imag()};
        jc["rel_err"] = c.rel_err;
        jc["tol"] = c.tol;
        jc["pass"] = c.pass;
        if (!c.note.empty()) jc["note"] = c.note;
        j["checks"].push_back(jc);
    }
    return j.dump(2);
}

}  // namespace asym
