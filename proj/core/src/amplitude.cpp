#include "gamp/amplitude.hpp"

#include "gamp/errors.hpp"
#include "gamp/quadrature.hpp"
#include "gamp/spectral.hpp"

#include <cmath>
#include <string>

namespace gamp {

ClosedFormResult gamma_closed_form(const ParameterLoop& loop, int n, double tol) {
    if (n < 0) {
        throw std::invalid_argument("gamma_closed_form: level must be >= 0");
    }
    if (!(tol > 0.0)) {
        throw std::invalid_argument("gamma_closed_form: tol must be positive");
    }
    validate_loop(loop);

    // (Z/omega) d(Y/Z)/ds = (Y' Z - Y Z') / (omega Z)
    auto integrand = [&loop](double s) {
        const ParameterPoint p = loop.point(s);
        const auto d = loop.derivative(s);
        return (d[1] * p.Z - p.Y * d[2]) / (omega(p) * p.Z);
    };
    const QuadratureResult q = integrate_adaptive(integrand, 0.0, 1.0, tol, 0.0);

    const double prefactor = (2.0 * n + 1.0) / 4.0;
    ClosedFormResult res;
    res.loop_integral = q.value;
    res.gamma = prefactor * q.value;
    res.error = prefactor * q.error;
    res.evaluations = q.evaluations;
    return res;
}

ConnectionResult gamma_connection(const ParameterLoop& loop, int n,
                                  int steps, double fd_step) {
    if (n < 0) {
        throw std::invalid_argument("gamma_connection: level must be >= 0");
    }
    if (steps < 8) {
        throw std::invalid_argument("gamma_connection: steps must be >= 8");
    }
    if (!(fd_step > 0.0)) {
        throw std::invalid_argument("gamma_connection: fdStep must be positive");
    }
    validate_loop(loop);

    // <n(s)| eta(s) |n(s + h)> with eta frozen at s; near 1 for a smooth gauge.
    auto pairing = [&loop, n](double s, double offset) {
        const ParameterPoint p = loop.point(s);
        const PolyGaussianState bra = snapshot_state(p, n);
        const PolyGaussianState ket = snapshot_state(loop.point(s + offset), n);
        const cplx v = inner_eta(bra, ket, p);
        if (std::abs(v - cplx{1.0, 0.0}) > 1e-2) {
            throw gauge_error("gamma_connection: snapshot gauge jumps near s = " +
                              std::to_string(s));
        }
        return v;
    };
    // central difference with one Richardson level: (4 D(h/2) - D(h)) / 3
    auto connection = [&pairing, fd_step](double s) {
        const double h = fd_step;
        const cplx d_h = (pairing(s, h) - pairing(s, -h)) / (2.0 * h);
        const cplx d_h2 = (pairing(s, 0.5 * h) - pairing(s, -0.5 * h)) / h;
        return (4.0 * d_h2 - d_h) / 3.0;
    };

    const ComplexQuadratureResult q = integrate_composite(connection, 0.0, 1.0, steps);

    ConnectionResult res;
    res.gamma = -q.value.real();
    res.imaginary_part = -q.value.imag();
    res.error_estimate = q.error;
    res.steps = steps;
    res.fd_step = fd_step;
    return res;
}

double dynamical_integral(const ParameterLoop& loop, int n, double tol) {
    if (n < 0) {
        throw std::invalid_argument("dynamical_integral: level must be >= 0");
    }
    validate_loop(loop);
    auto integrand = [&loop](double s) { return omega(loop.point(s)); };
    const QuadratureResult q = integrate_adaptive(integrand, 0.0, 1.0, tol, 0.0);
    return loop.period() * (double(n) + 0.5) * q.value;
}

AmplitudeReport amplitude_report(const ParameterLoop& loop, int n,
                                 double tol, int steps, double fd_step) {
    AmplitudeReport rep;
    rep.n = n;
    rep.loop_kind = loop.kind();
    rep.period = loop.period();
    rep.closed = gamma_closed_form(loop, n, tol);
    rep.connection = gamma_connection(loop, n, steps, fd_step);
    rep.dynamical = dynamical_integral(loop, n, tol);
    return rep;
}

} // namespace gamp
