#pragma once

#include "gamp/errors.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace gamp {

/// Dormand-Prince 5(4) with the standard 4th-order dense-output interpolant,
/// templated over small complex state vectors. Integrates forward or backward
/// depending on the sign of t1 - t0 and keeps every accepted segment, so the
/// solution can be sampled anywhere in [t0, t1] after the fact.
template <std::size_t N>
struct OdeDenseSegment {
    using State = std::array<std::complex<double>, N>;
    double t0 = 0.0;
    double h = 0.0;
    State r1{}, r2{}, r3{}, r4{}, r5{};

    State eval(double t) const {
        const double theta = (t - t0) / h;
        const double theta1 = 1.0 - theta;
        State y;
        for (std::size_t i = 0; i < N; ++i) {
            y[i] = r1[i] + theta * (r2[i] + theta1 * (r3[i] + theta * (r4[i] + theta1 * r5[i])));
        }
        return y;
    }
};

template <std::size_t N>
struct OdeSolution {
    using State = std::array<std::complex<double>, N>;
    std::vector<OdeDenseSegment<N>> segments; ///< in integration order
    double t_begin = 0.0;
    double t_end = 0.0;
    State y_final{};
    int steps = 0;
    int rejected = 0;

    /// Dense-output sample; t must lie within the integrated span.
    State at(double t) const {
        const bool forward = t_end >= t_begin;
        std::size_t lo = 0, hi = segments.size();
        while (hi - lo > 1) {
            const std::size_t mid = lo + (hi - lo) / 2;
            const double start = segments[mid].t0;
            if (forward ? (t >= start) : (t <= start)) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        return segments[lo].eval(t);
    }
};

template <std::size_t N, typename F>
OdeSolution<N> integrate_ode(const F& rhs, std::array<std::complex<double>, N> y0,
                             double t0, double t1,
                             double rtol = 1e-10, double atol = 1e-12,
                             long max_steps = 1000000) {
    using State = std::array<std::complex<double>, N>;

    // Butcher tableau (Dormand & Prince 1980) and dense-output weights
    constexpr double a21 = 1.0 / 5.0;
    constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                     a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
    constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                     a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
    constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                     b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
    constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                     e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
    constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                     d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                     d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

    OdeSolution<N> sol;
    sol.t_begin = t0;
    sol.t_end = t1;

    const double span = t1 - t0;
    if (span == 0.0) {
        sol.y_final = y0;
        return sol;
    }
    const double dir = span > 0.0 ? 1.0 : -1.0;

    double t = t0;
    State y = y0;
    State k1;
    rhs(t, y, k1);
    double h = dir * std::min(std::abs(span), 1e-3 * (1.0 + std::abs(span)));

    State k2, k3, k4, k5, k6, k7, ytmp, ynew, yerr;
    while ((t1 - t) * dir > 0.0) {
        if (sol.steps + sol.rejected > max_steps) {
            throw integration_error("integrate_ode: step budget exhausted", t);
        }
        if (std::abs(h) < 1e-14 * (1.0 + std::abs(t))) {
            throw integration_error("integrate_ode: step size underflow", t);
        }
        if ((t + h - t1) * dir > 0.0) h = t1 - t;

        for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
        rhs(t + h / 5.0, ytmp, k2);
        for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        rhs(t + 3.0 * h / 10.0, ytmp, k3);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        rhs(t + 4.0 * h / 5.0, ytmp, k4);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        rhs(t + 8.0 * h / 9.0, ytmp, k5);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                                  a65 * k5[i]);
        rhs(t + h, ytmp, k6);
        for (std::size_t i = 0; i < N; ++i)
            ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        rhs(t + h, ynew, k7); // FSAL

        double err_sq = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            yerr[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                           e7 * k7[i]);
            const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            const double r = std::abs(yerr[i]) / sc;
            err_sq += r * r;
        }
        const double err = std::sqrt(err_sq / double(N));

        if (err <= 1.0) {
            OdeDenseSegment<N> seg;
            seg.t0 = t;
            seg.h = h;
            for (std::size_t i = 0; i < N; ++i) {
                const std::complex<double> dy = ynew[i] - y[i];
                seg.r1[i] = y[i];
                seg.r2[i] = dy;
                seg.r3[i] = h * k1[i] - dy;
                seg.r4[i] = dy - h * k7[i] - seg.r3[i];
                seg.r5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                                 d6 * k6[i] + d7 * k7[i]);
            }
            sol.segments.push_back(seg);
            t += h;
            y = ynew;
            k1 = k7;
            ++sol.steps;
        } else {
            ++sol.rejected;
        }
        const double fac = std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(err, 1e-16), -0.2)));
        h *= fac;
    }
    sol.y_final = y;
    return sol;
}

} // namespace gamp
