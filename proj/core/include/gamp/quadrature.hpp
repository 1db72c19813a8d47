#pragma once

#include <complex>
#include <functional>

namespace gamp {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0; ///< estimated absolute error
    int evaluations = 0;
    bool converged = false;
};

/// Adaptive Gauss-Kronrod 15(7) on [a, b]. Bisects the interval with the
/// largest error estimate until |error| <= max(abs_tol, rel_tol * |value|).
/// Final summation runs in interval order, so results are deterministic.
/// Throws integration_error if the interval budget runs out.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    double abs_tol = 1e-10, double rel_tol = 1e-12,
                                    int max_intervals = 2000);

/// Semi-infinite integral over [a, inf), mapped to [0, 1) via q = a + t/(1-t).
QuadratureResult integrate_to_infinity(const std::function<double(double)>& f,
                                       double a,
                                       double abs_tol = 1e-10, double rel_tol = 1e-12,
                                       int max_intervals = 2000);

struct ComplexQuadratureResult {
    std::complex<double> value{0.0, 0.0};
    double error = 0.0;
};

/// Non-adaptive composite Gauss-Kronrod 15(7) over `panels` equal panels of
/// [a, b], for smooth complex integrands (the connection integral). The error
/// estimate is the summed |GK15 - G7| deviation.
ComplexQuadratureResult integrate_composite(const std::function<std::complex<double>(double)>& f,
                                            double a, double b, int panels);

} // namespace gamp
