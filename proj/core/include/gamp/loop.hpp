#pragma once

#include "gamp/params.hpp"

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace gamp {

/// Finite Fourier series c0 + sum_k (a_k cos 2*pi*k*s + b_k sin 2*pi*k*s).
struct FourierSeries {
    double constant = 0.0;
    std::vector<double> cos_coeffs; // a_1 .. a_K
    std::vector<double> sin_coeffs; // b_1 .. b_K

    double value(double s) const;
    double derivative(double s) const; // d/ds
};

/// A closed C^1 path in (X, Y, Z) parameter space, parametrized by the
/// normalized loop coordinate s in [0, 1] and traversed in physical time T.
///
/// Loops are immutable values; point/derivative evaluation is pure and
/// safe to call concurrently.
class ParameterLoop {
public:
    using PointFn = std::function<ParameterPoint(double)>;
    using DerivativeFn = std::function<std::array<double, 3>(double)>;

    ParameterLoop(std::string kind, double period, PointFn point, DerivativeFn derivative);

    ParameterPoint point(double s) const { return point_(wrap(s)); }
    /// (dX/ds, dY/ds, dZ/ds) at loop coordinate s.
    std::array<double, 3> derivative(double s) const { return derivative_(wrap(s)); }

    double period() const { return period_; }
    const std::string& kind() const { return kind_; }

    /// Same path, new traversal time.
    ParameterLoop with_period(double period) const;

    static double wrap(double s);

private:
    std::string kind_;
    double period_;
    PointFn point_;
    DerivativeFn derivative_;
};

/// Degenerate loop frozen at a single point; traces no geometry.
ParameterLoop make_constant_loop(const ParameterPoint& p, double period);

/// Y and Z held fixed, X oscillating: X(s) = x0 + xr * sin 2*pi*s.
/// A null loop for the geometric amplitude (d(Y/Z) = 0 identically).
ParameterLoop make_constant_x_wobble(double Y, double Z, double x0, double xr, double period);

/// Z = 1, Y(s) = y0 + ry * cos 2*pi*s, X(s) = x0 + rx * sin 2*pi*s.
ParameterLoop make_ellipse(double y0, double ry, double x0, double rx, double period);

ParameterLoop make_fourier_loop(const FourierSeries& X, const FourierSeries& Y,
                                const FourierSeries& Z, double period);

struct LoopValidation {
    double min_discriminant = 0.0; ///< min over s of Y^2 - XZ
    double min_z = 0.0;
    double argmin_s = 0.0;         ///< where the discriminant minimum sits
    double min_omega = 0.0;
};

/// Scans a dense grid (default 10^4 samples) and refines around local minima.
/// Throws regime_error naming the offending s if the regime fails anywhere.
LoopValidation validate_loop(const ParameterLoop& loop, int grid_samples = 10000);

/// min over the loop of omega(point(s)); the loop must validate.
double min_omega(const ParameterLoop& loop, int grid_samples = 10000);

/// point'(s) = point(1 - s): same image, opposite orientation.
ParameterLoop reverse_loop(const ParameterLoop& loop);

/// point'(s) = point(s + s0 mod 1): same loop, shifted start.
ParameterLoop shift_loop(const ParameterLoop& loop, double s0);

} // namespace gamp
