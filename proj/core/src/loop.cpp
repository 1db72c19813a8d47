#include "gamp/loop.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

namespace gamp {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

double FourierSeries::value(double s) const {
    double v = constant;
    for (std::size_t k = 0; k < cos_coeffs.size(); ++k) {
        v += cos_coeffs[k] * std::cos(two_pi * double(k + 1) * s);
    }
    for (std::size_t k = 0; k < sin_coeffs.size(); ++k) {
        v += sin_coeffs[k] * std::sin(two_pi * double(k + 1) * s);
    }
    return v;
}

double FourierSeries::derivative(double s) const {
    double v = 0.0;
    for (std::size_t k = 0; k < cos_coeffs.size(); ++k) {
        const double wk = two_pi * double(k + 1);
        v -= cos_coeffs[k] * wk * std::sin(wk * s);
    }
    for (std::size_t k = 0; k < sin_coeffs.size(); ++k) {
        const double wk = two_pi * double(k + 1);
        v += sin_coeffs[k] * wk * std::cos(wk * s);
    }
    return v;
}

double ParameterLoop::wrap(double s) {
    double r = s - std::floor(s);
    if (r < 0.0) r += 1.0;
    return r;
}

ParameterLoop::ParameterLoop(std::string kind, double period, PointFn point, DerivativeFn derivative)
    : kind_(std::move(kind)), period_(period), point_(std::move(point)),
      derivative_(std::move(derivative)) {
    if (!(period_ > 0.0)) {
        throw std::invalid_argument("ParameterLoop: period must be positive");
    }
}

ParameterLoop ParameterLoop::with_period(double period) const {
    return ParameterLoop(kind_, period, point_, derivative_);
}

ParameterLoop make_constant_loop(const ParameterPoint& p, double period) {
    p.validate();
    auto point = [p](double) { return p; };
    auto deriv = [](double) { return std::array<double, 3>{0.0, 0.0, 0.0}; };
    return ParameterLoop("constant", period, point, deriv);
}

ParameterLoop make_constant_x_wobble(double Y, double Z, double x0, double xr, double period) {
    auto point = [=](double s) {
        return ParameterPoint{x0 + xr * std::sin(two_pi * s), Y, Z};
    };
    auto deriv = [=](double s) {
        return std::array<double, 3>{xr * two_pi * std::cos(two_pi * s), 0.0, 0.0};
    };
    ParameterLoop loop("constant-X-wobble", period, point, deriv);
    validate_loop(loop);
    return loop;
}

ParameterLoop make_ellipse(double y0, double ry, double x0, double rx, double period) {
    auto point = [=](double s) {
        return ParameterPoint{x0 + rx * std::sin(two_pi * s), y0 + ry * std::cos(two_pi * s), 1.0};
    };
    auto deriv = [=](double s) {
        return std::array<double, 3>{rx * two_pi * std::cos(two_pi * s),
                                     -ry * two_pi * std::sin(two_pi * s), 0.0};
    };
    ParameterLoop loop("ellipse", period, point, deriv);
    validate_loop(loop);
    return loop;
}

ParameterLoop make_fourier_loop(const FourierSeries& X, const FourierSeries& Y,
                                const FourierSeries& Z, double period) {
    auto point = [=](double s) {
        return ParameterPoint{X.value(s), Y.value(s), Z.value(s)};
    };
    auto deriv = [=](double s) {
        return std::array<double, 3>{X.derivative(s), Y.derivative(s), Z.derivative(s)};
    };
    ParameterLoop loop("custom-fourier", period, point, deriv);
    validate_loop(loop);
    return loop;
}

namespace {

double discriminant_at(const ParameterLoop& loop, double s) {
    return loop.point(s).discriminant();
}

// Golden-section refinement of a local minimum bracketed by [lo, hi].
double refine_minimum(const ParameterLoop& loop, double lo, double hi) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = discriminant_at(loop, c);
    double fd = discriminant_at(loop, d);
    for (int it = 0; it < 80 && (b - a) > 1e-14; ++it) {
        if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - invphi * (b - a);
            fc = discriminant_at(loop, c);
        } else {
            a = c; c = d; fc = fd;
            d = a + invphi * (b - a);
            fd = discriminant_at(loop, d);
        }
    }
    return 0.5 * (a + b);
}

} // namespace

LoopValidation validate_loop(const ParameterLoop& loop, int grid_samples) {
    if (grid_samples < 8) {
        throw std::invalid_argument("validate_loop: grid too coarse");
    }
    // C^1 closure across the seam at s = 0: wrap() makes point(0) == point(1)
    // identically, so probe just inside both endpoints instead and compare
    // against the first-order prediction.
    const double eps = 1e-7;
    const ParameterPoint pl = loop.point(eps);
    const ParameterPoint pr = loop.point(1.0 - eps);
    const auto dl = loop.derivative(eps);
    const auto dr = loop.derivative(1.0 - eps);
    const double scale = 1.0 + std::abs(pl.X) + std::abs(pl.Y) + std::abs(pl.Z);
    const double dscale = 1.0 + std::abs(dl[0]) + std::abs(dl[1]) + std::abs(dl[2]);
    const double value_gap = std::abs(pl.X - pr.X - 2.0 * eps * dl[0]) +
                             std::abs(pl.Y - pr.Y - 2.0 * eps * dl[1]) +
                             std::abs(pl.Z - pr.Z - 2.0 * eps * dl[2]);
    const double deriv_gap =
        std::abs(dl[0] - dr[0]) + std::abs(dl[1] - dr[1]) + std::abs(dl[2] - dr[2]);
    if (value_gap > 1e-6 * scale || deriv_gap > 1e-4 * dscale) {
        throw std::invalid_argument("validate_loop: loop is not closed to C^1");
    }

    LoopValidation v;
    v.min_discriminant = std::numeric_limits<double>::infinity();
    v.min_z = std::numeric_limits<double>::infinity();
    int argmin = 0;
    for (int i = 0; i < grid_samples; ++i) {
        const double s = double(i) / grid_samples;
        const ParameterPoint p = loop.point(s);
        const double disc = p.discriminant();
        if (disc < v.min_discriminant) {
            v.min_discriminant = disc;
            argmin = i;
        }
        v.min_z = std::min(v.min_z, p.Z);
    }
    // Refine around the grid minimum.
    const double lo = double(argmin - 1) / grid_samples;
    const double hi = double(argmin + 1) / grid_samples;
    const double s_min = refine_minimum(loop, lo, hi);
    const double refined = discriminant_at(loop, s_min);
    if (refined < v.min_discriminant) {
        v.min_discriminant = refined;
    }
    v.argmin_s = ParameterLoop::wrap(s_min);

    if (!(v.min_z > 0.0)) {
        throw regime_error("validate_loop: Z <= 0 somewhere on the loop");
    }
    if (!(v.min_discriminant > 0.0)) {
        throw regime_error("validate_loop: regime violated (Y^2 - XZ <= 0) near s = " +
                           std::to_string(v.argmin_s));
    }
    v.min_omega = std::sqrt(v.min_discriminant);
    return v;
}

double min_omega(const ParameterLoop& loop, int grid_samples) {
    return validate_loop(loop, grid_samples).min_omega;
}

ParameterLoop reverse_loop(const ParameterLoop& loop) {
    auto point = [loop](double s) { return loop.point(1.0 - s); };
    auto deriv = [loop](double s) {
        auto d = loop.derivative(1.0 - s);
        return std::array<double, 3>{-d[0], -d[1], -d[2]};
    };
    return ParameterLoop(loop.kind() + "-reversed", loop.period(), point, deriv);
}

ParameterLoop shift_loop(const ParameterLoop& loop, double s0) {
    auto point = [loop, s0](double s) { return loop.point(s + s0); };
    auto deriv = [loop, s0](double s) { return loop.derivative(s + s0); };
    return ParameterLoop(loop.kind() + "-shifted", loop.period(), point, deriv);
}

} // namespace gamp
