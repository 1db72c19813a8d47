#include "gamp/quadrature.hpp"

#include "gamp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace gamp {

namespace {

// Gauss-Kronrod 15-point rule with embedded 7-point Gauss rule (QUADPACK xgk/wgk/wg).
constexpr double xgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double wgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <typename T>
struct PanelEstimate {
    T gk;        // 15-point Kronrod value
    double err;  // |GK15 - G7| based estimate
};

template <typename T, typename F>
PanelEstimate<T> gk15(const F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const T fc = f(center);
    T result_gauss = wg[3] * fc;
    T result_kronrod = wgk[7] * fc;

    for (int j = 0; j < 7; ++j) {
        const double dx = half * xgk[j];
        const T f1 = f(center - dx);
        const T f2 = f(center + dx);
        result_kronrod += wgk[j] * (f1 + f2);
        if (j % 2 == 1) {
            result_gauss += wg[j / 2] * (f1 + f2);
        }
    }
    result_kronrod *= half;
    result_gauss *= half;
    return {result_kronrod, std::abs(result_kronrod - result_gauss)};
}

struct Interval {
    double a, b;
    double value;
    double err;
};

} // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    double abs_tol, double rel_tol, int max_intervals) {
    QuadratureResult res;
    auto first = gk15<double>(f, a, b);
    res.evaluations = 15;

    std::vector<Interval> intervals{{a, b, first.gk, first.err}};
    auto total = [&intervals]() {
        double v = 0.0, e = 0.0;
        for (const auto& iv : intervals) {
            v += iv.value;
            e += iv.err;
        }
        return std::pair{v, e};
    };

    while (true) {
        auto [value, err] = total();
        if (err <= std::max(abs_tol, rel_tol * std::abs(value))) {
            res.converged = true;
            break;
        }
        if (int(intervals.size()) >= max_intervals) {
            break;
        }
        // split the interval with the largest error estimate
        auto worst = std::max_element(intervals.begin(), intervals.end(),
                                      [](const Interval& u, const Interval& v) { return u.err < v.err; });
        const double mid = 0.5 * (worst->a + worst->b);
        auto left = gk15<double>(f, worst->a, mid);
        auto right = gk15<double>(f, mid, worst->b);
        res.evaluations += 30;
        const double wb = worst->b;
        *worst = {worst->a, mid, left.gk, left.err};
        intervals.push_back({mid, wb, right.gk, right.err});
    }

    // deterministic final summation in interval order
    std::sort(intervals.begin(), intervals.end(),
              [](const Interval& u, const Interval& v) { return u.a < v.a; });
    res.value = 0.0;
    res.error = 0.0;
    for (const auto& iv : intervals) {
        res.value += iv.value;
        res.error += iv.err;
    }
    if (!res.converged) {
        throw integration_error("integrate_adaptive: interval budget exhausted, error estimate " +
                                std::to_string(res.error), res.value);
    }
    return res;
}

QuadratureResult integrate_to_infinity(const std::function<double(double)>& f,
                                       double a,
                                       double abs_tol, double rel_tol, int max_intervals) {
    auto mapped = [&f, a](double t) {
        const double u = 1.0 - t;
        const double q = a + t / u;
        return f(q) / (u * u);
    };
    // stop just short of t = 1; the Jacobian-weighted integrand must vanish there
    return integrate_adaptive(mapped, 0.0, 1.0 - 1e-12, abs_tol, rel_tol, max_intervals);
}

ComplexQuadratureResult integrate_composite(const std::function<std::complex<double>(double)>& f,
                                            double a, double b, int panels) {
    if (panels < 1) {
        throw std::invalid_argument("integrate_composite: panels must be >= 1");
    }
    ComplexQuadratureResult res;
    const double h = (b - a) / panels;
    for (int i = 0; i < panels; ++i) {
        auto panel = gk15<std::complex<double>>(f, a + i * h, a + (i + 1) * h);
        res.value += panel.gk;
        res.error += panel.err;
    }
    return res;
}

} // namespace gamp
