#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "saari/errors.hpp"

namespace saari {

struct IntegratorConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double max_step = 1e100;
    bool collision_stop = true;
};

// Adaptive Dormand-Prince 5(4) with the standard quartic dense interpolant.
// Drives y' = f(t, y) across [t0, t1] and reports dense samples in order.
class DormandPrince {
  public:
    using Vec = std::vector<double>;
    using Rhs = std::function<void(double, const Vec&, Vec&)>;

    // observe(t, y) is called once per requested sample time, in order.
    // after_step(t, y) runs at each accepted step end; returning false stops
    // the integration early.
    static void run(const Rhs& f, double t0, double t1, Vec y,
                    const IntegratorConfig& cfg, const std::vector<double>& sample_times,
                    const std::function<void(double, const Vec&)>& observe,
                    const std::function<bool(double, const Vec&)>& after_step = nullptr) {
        if (!(cfg.rel_tol > 0) || !(cfg.abs_tol > 0))
            throw ConfigError("integrator tolerances must be positive");
        const std::size_t n = y.size();
        const double dir = t1 >= t0 ? 1.0 : -1.0;
        std::size_t next_sample = 0;
        while (next_sample < sample_times.size()
               && dir * (sample_times[next_sample] - t0) <= 0) {
            observe(sample_times[next_sample], y);
            ++next_sample;
        }

        Vec k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n), yerr(n);
        f(t0, y, k1);
        double t = t0;
        double h = initial_step(f, t0, y, k1, cfg, dir);
        int rejected_in_a_row = 0;

        while (dir * (t1 - t) > 0) {
            h = std::min(std::abs(h), cfg.max_step);
            h = std::min(h, std::abs(t1 - t));
            if (h < 1e-14 * (std::abs(t) + 1.0)) throw StepSizeUnderflow();
            double hs = dir * h;

            stage(f, t, y, hs, k1, k2, k3, k4, k5, k6, k7, ytmp, ynew);

            double err = 0;
            for (std::size_t i = 0; i < n; ++i) {
                double e = hs
                           * (kE1 * k1[i] + kE3 * k3[i] + kE4 * k4[i] + kE5 * k5[i]
                              + kE6 * k6[i] + kE7 * k7[i]);
                double sc = cfg.abs_tol
                            + cfg.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
                err += (e / sc) * (e / sc);
            }
            err = std::sqrt(err / n);

            if (err <= 1.0) {
                double tnew = t + hs;
                // dense output over [t, tnew]
                while (next_sample < sample_times.size()
                       && dir * (sample_times[next_sample] - tnew) <= 1e-14 * std::abs(hs)) {
                    double theta = (sample_times[next_sample] - t) / hs;
                    interpolate(theta, hs, y, ynew, k1, k3, k4, k5, k6, k7, ytmp);
                    observe(sample_times[next_sample], ytmp);
                    ++next_sample;
                }
                y = ynew;
                t = tnew;
                k1 = k7;  // FSAL
                rejected_in_a_row = 0;
                if (after_step && !after_step(t, y)) return;
            } else {
                ++rejected_in_a_row;
                if (rejected_in_a_row > 60) throw SolverStall("step control cannot make progress");
            }
            double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
            h = std::abs(hs) * std::clamp(fac, 0.2, 5.0);
        }
        while (next_sample < sample_times.size()) {
            observe(sample_times[next_sample], y);
            ++next_sample;
        }
    }

  private:
    // error coefficients b5 - b4
    static constexpr double kE1 = 71.0 / 57600.0;
    static constexpr double kE3 = -71.0 / 16695.0;
    static constexpr double kE4 = 71.0 / 1920.0;
    static constexpr double kE5 = -17253.0 / 339200.0;
    static constexpr double kE6 = 22.0 / 525.0;
    static constexpr double kE7 = -1.0 / 40.0;

    static void stage(const Rhs& f, double t, const Vec& y, double h, const Vec& k1, Vec& k2,
                      Vec& k3, Vec& k4, Vec& k5, Vec& k6, Vec& k7, Vec& ytmp, Vec& ynew) {
        const std::size_t n = y.size();
        auto ax = [&](auto&&... terms) {
            for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * (... + terms(i));
        };
        auto w = [](double c, const Vec& k) {
            return [c, &k](std::size_t i) { return c * k[i]; };
        };
        ax(w(1.0 / 5, k1));
        f(t + h / 5, ytmp, k2);
        ax(w(3.0 / 40, k1), w(9.0 / 40, k2));
        f(t + 3 * h / 10, ytmp, k3);
        ax(w(44.0 / 45, k1), w(-56.0 / 15, k2), w(32.0 / 9, k3));
        f(t + 4 * h / 5, ytmp, k4);
        ax(w(19372.0 / 6561, k1), w(-25360.0 / 2187, k2), w(64448.0 / 6561, k3),
           w(-212.0 / 729, k4));
        f(t + 8 * h / 9, ytmp, k5);
        ax(w(9017.0 / 3168, k1), w(-355.0 / 33, k2), w(46732.0 / 5247, k3), w(49.0 / 176, k4),
           w(-5103.0 / 18656, k5));
        f(t + h, ytmp, k6);
        for (std::size_t i = 0; i < n; ++i)
            ynew[i] = y[i]
                      + h
                            * (35.0 / 384 * k1[i] + 500.0 / 1113 * k3[i] + 125.0 / 192 * k4[i]
                               - 2187.0 / 6784 * k5[i] + 11.0 / 84 * k6[i]);
        f(t + h, ynew, k7);
    }

    static void interpolate(double theta, double h, const Vec& y0, const Vec& y1, const Vec& k1,
                            const Vec& k3, const Vec& k4, const Vec& k5, const Vec& k6,
                            const Vec& k7, Vec& out) {
        constexpr double d1 = -12715105075.0 / 11282082432.0;
        constexpr double d3 = 87487479700.0 / 32700410799.0;
        constexpr double d4 = -10690763975.0 / 1880347072.0;
        constexpr double d5 = 701980252875.0 / 199316789632.0;
        constexpr double d6 = -1453857185.0 / 822651844.0;
        constexpr double d7 = 69997945.0 / 29380423.0;
        double th1 = 1 - theta;
        for (std::size_t i = 0; i < y0.size(); ++i) {
            double dy = y1[i] - y0[i];
            double r1 = y0[i];
            double r2 = dy;
            double r3 = h * k1[i] - dy;
            double r4 = dy - h * k7[i] - r3;
            double r5 = h
                        * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i]
                           + d7 * k7[i]);
            out[i] = r1 + theta * (r2 + th1 * (r3 + theta * (r4 + th1 * r5)));
        }
    }

    static double initial_step(const Rhs& f, double t0, const Vec& y, const Vec& k1,
                               const IntegratorConfig& cfg, double dir) {
        double d0 = 0, d1 = 0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            double sc = cfg.abs_tol + cfg.rel_tol * std::abs(y[i]);
            d0 += (y[i] / sc) * (y[i] / sc);
            d1 += (k1[i] / sc) * (k1[i] / sc);
        }
        d0 = std::sqrt(d0 / y.size());
        d1 = std::sqrt(d1 / y.size());
        double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        // one Euler probe to bound the second derivative
        Vec y1(y.size()), k2(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) y1[i] = y[i] + dir * h0 * k1[i];
        f(t0 + dir * h0, y1, k2);
        double d2 = 0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            double sc = cfg.abs_tol + cfg.rel_tol * std::abs(y[i]);
            d2 += ((k2[i] - k1[i]) / sc) * ((k2[i] - k1[i]) / sc);
        }
        d2 = std::sqrt(d2 / y.size()) / h0;
        double dm = std::max(d1, d2);
        double h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 0.2);
        return std::min({100 * h0, h1, cfg.max_step});
    }
};

}  // namespace saari
