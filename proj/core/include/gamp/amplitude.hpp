#pragma once

#include "gamp/loop.hpp"

#include <string>

namespace gamp {

struct ClosedFormResult {
    double gamma = 0.0;         ///< geometric amplitude
    double loop_integral = 0.0; ///< the n-independent contour integral (Z/omega) d(Y/Z)
    double error = 0.0;         ///< quadrature error estimate, scaled by the prefactor
    int evaluations = 0;
};

/// Closed-form engine: gamma_n = ((2n+1)/4) * contour integral of (Z/omega) d(Y/Z),
/// by adaptive quadrature to estimated absolute error <= tol. Exactly
/// proportional to (2n+1) by construction.
ClosedFormResult gamma_closed_form(const ParameterLoop& loop, int n, double tol = 1e-10);

struct ConnectionResult {
    double gamma = 0.0;          ///< -Re of the integrated connection
    double imaginary_part = 0.0; ///< -Im of the same integral (geometric-phase byproduct)
    double error_estimate = 0.0;
    int steps = 0;
    double fd_step = 0.0;
};

/// Connection engine: integrates the metric-weighted connection
/// <n(s)| eta(s) |d/ds n(s)> over s in [0,1] with composite Gauss-Kronrod
/// quadrature; the derivative comes from central finite differences of the
/// gauge-fixed snapshots at s +/- fd_step with one Richardson level.
/// Throws gauge_error if adjacent snapshots fail to pair near unity.
ConnectionResult gamma_connection(const ParameterLoop& loop, int n,
                                  int steps = 512, double fd_step = 1e-5);

/// T * (n + 1/2) * integral_0^1 omega(point(s)) ds: the log of the dynamical
/// amplitude accumulated over one traversal.
double dynamical_integral(const ParameterLoop& loop, int n, double tol = 1e-10);

/// One-stop summary of the two closed-form-side engines plus the dynamical
/// integral; the dynamics engine reports separately (it needs an ODE solve).
struct AmplitudeReport {
    int n = 0;
    std::string loop_kind;
    double period = 0.0;
    ClosedFormResult closed;
    ConnectionResult connection;
    double dynamical = 0.0;
};

AmplitudeReport amplitude_report(const ParameterLoop& loop, int n,
                                 double tol = 1e-10, int steps = 512,
                                 double fd_step = 1e-5);

} // namespace gamp
