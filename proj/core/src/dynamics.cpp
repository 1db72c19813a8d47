#include "gamp/dynamics.hpp"

#include "gamp/amplitude.hpp"
#include "gamp/errors.hpp"
#include "gamp/ode.hpp"
#include "gamp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gamp {

namespace {
constexpr cplx iu{0.0, 1.0};
}

EvolutionDerivatives ode_rhs(const EvolutionState& st, const ParameterPoint& p) {
    const cplx za = p.Z * st.a;
    EvolutionDerivatives d;
    d.da = -iu * za * st.a - 2.0 * p.Y * st.a + iu * p.X;
    d.dbeta2 = -2.0 * iu * st.beta2 * (za - iu * p.Y - p.Z * st.beta2);
    d.dlogN = -0.5 * iu * (za - iu * p.Y) - iu * double(st.n) * p.Z * st.beta2;
    return d;
}

PolyGaussianState reconstruct_state(const EvolutionState& st) {
    PolyGaussianState psi;
    psi.a = st.a;
    psi.log_norm = st.logN;
    psi.level = st.n;
    const cplx beta = std::sqrt(st.beta2);
    const std::vector<double> h = hermite_coefficients(st.n);
    psi.coeffs.resize(h.size());
    cplx beta_pow{1.0, 0.0};
    for (std::size_t k = 0; k < h.size(); ++k) {
        psi.coeffs[k] = h[k] * beta_pow;
        beta_pow *= beta;
    }
    return psi;
}

Trajectory evolve(const ParameterLoop& loop, int n, double ode_tol, int output_points) {
    if (n < 0) {
        throw std::invalid_argument("evolve: level must be >= 0");
    }
    if (!(ode_tol > 0.0)) {
        throw std::invalid_argument("evolve: odeTol must be positive");
    }
    validate_loop(loop);
    const double T = loop.period();
    const int samples = std::max(output_points, 257);
    const double atol = 1e-2 * ode_tol;

    // Pass 1: the Gaussian width. Forward in time the tracked Riccati branch
    // repels (local Lyapunov exponent +2 omega), so integrate it backward from
    // its snapshot value at t = T, where the branch attracts.
    auto rhs_a = [&loop, T](double t, const std::array<cplx, 1>& y, std::array<cplx, 1>& dy) {
        const ParameterPoint p = loop.point(t / T);
        dy[0] = -iu * p.Z * y[0] * y[0] - 2.0 * p.Y * y[0] + iu * p.X;
    };
    const ParameterPoint p_end = loop.point(1.0);
    const cplx a_end = iu * (p_end.Y + omega(p_end)) / p_end.Z;
    const auto width = integrate_ode<1>(rhs_a, {a_end}, T, 0.0, ode_tol, atol);

    // Pass 2: beta2, logN and the running dynamical integral ride on top.
    auto rhs_rest = [&loop, &width, n, T](double t, const std::array<cplx, 3>& y,
                                          std::array<cplx, 3>& dy) {
        const ParameterPoint p = loop.point(t / T);
        const cplx a = width.at(t)[0];
        const cplx za = p.Z * a;
        dy[0] = -2.0 * iu * y[0] * (za - iu * p.Y - p.Z * y[0]);
        dy[1] = -0.5 * iu * (za - iu * p.Y) - iu * double(n) * p.Z * y[0];
        dy[2] = (double(n) + 0.5) * omega(p);
    };
    const ParameterPoint p0 = loop.point(0.0);
    const cplx beta2_0 = iu * omega(p0) / p0.Z;
    const auto rest = integrate_ode<3>(rhs_rest, {beta2_0, cplx{0.0, 0.0}, cplx{0.0, 0.0}},
                                       0.0, T, ode_tol, atol);

    // Fix the log-amplitude offset so the initial state is eta-normalized.
    EvolutionState st0;
    st0.a = width.at(0.0)[0];
    st0.beta2 = beta2_0;
    st0.logN = {0.0, 0.0};
    st0.n = n;
    const cplx nrm0 = inner_eta(reconstruct_state(st0), reconstruct_state(st0), p0);
    if (!(nrm0.real() > 0.0) || std::abs(nrm0.imag()) > 1e-8 * std::abs(nrm0)) {
        throw extraction_error("evolve: initial eta-norm is not real positive");
    }
    const double log_offset = -0.5 * std::log(nrm0.real());

    Trajectory traj;
    traj.n = n;
    traj.period = T;
    traj.ode_steps = width.steps + rest.steps;
    traj.samples.reserve(std::size_t(samples));
    for (int j = 0; j < samples; ++j) {
        const double t = T * double(j) / double(samples - 1);
        const auto y = rest.at(t);
        TrajectorySample sample;
        sample.t = t;
        sample.state.a = width.at(t)[0];
        sample.state.beta2 = y[0];
        sample.state.logN = y[1] + log_offset;
        sample.state.n = n;
        sample.state.t = t;
        sample.dynamical = y[2].real();
        const ParameterPoint p = loop.point(t / T);
        const PolyGaussianState psi = reconstruct_state(sample.state);
        sample.eta_norm_log = inner_eta_log(psi, psi, p).real();
        sample.gamma_running = 0.5 * sample.eta_norm_log - sample.dynamical;
        traj.samples.push_back(sample);
    }
    return traj;
}

double extract_gamma(const Trajectory& traj, const ParameterLoop& loop, int n) {
    if (traj.samples.empty()) {
        throw std::invalid_argument("extract_gamma: empty trajectory");
    }
    if (traj.n != n || traj.period != loop.period()) {
        throw std::invalid_argument("extract_gamma: trajectory does not match loop/level");
    }
    const TrajectorySample& last = traj.samples.back();
    const PolyGaussianState psi = reconstruct_state(last.state);
    const cplx lg = inner_eta_log(psi, psi, loop.point(1.0));
    if (std::abs(lg.imag()) > 1e-8 * (1.0 + std::abs(lg))) {
        throw extraction_error("extract_gamma: final pairing not real positive (arg = " +
                               std::to_string(lg.imag()) + ")");
    }
    return 0.5 * lg.real() - dynamical_integral(loop, n);
}

double gamma_dynamics(const ParameterLoop& loop, int n, double ode_tol) {
    const double fwd = extract_gamma(evolve(loop, n, ode_tol), loop, n);
    const ParameterLoop rev = reverse_loop(loop);
    const double bwd = extract_gamma(evolve(rev, n, ode_tol), rev, n);
    // gamma is orientation-odd while the leading adiabatic error is even, so
    // the half difference cancels the O(1/T) term.
    return 0.5 * (fwd - bwd);
}

std::vector<ConvergenceRow> convergence_study(const ParameterLoop& loop, int n,
                                              const std::vector<double>& periods,
                                              double ode_tol) {
    if (periods.size() < 3 || !std::is_sorted(periods.begin(), periods.end()) ||
        std::adjacent_find(periods.begin(), periods.end()) != periods.end()) {
        throw std::invalid_argument("convergence_study: need >= 3 strictly increasing periods");
    }
    const double gamma_closed = gamma_closed_form(loop, n).gamma;

    std::vector<ConvergenceRow> rows;
    rows.reserve(periods.size());
    for (double T : periods) {
        ConvergenceRow row;
        row.period = T;
        row.gamma_dyn = gamma_dynamics(loop.with_period(T), n, ode_tol);
        row.gamma_closed = gamma_closed;
        row.abs_err = std::abs(row.gamma_dyn - gamma_closed);
        if (!rows.empty() && rows.back().abs_err > 0.0 && row.abs_err > 0.0) {
            row.slope = std::log(row.abs_err / rows.back().abs_err) /
                        std::log(T / rows.back().period);
        }
        rows.push_back(row);
    }
    return rows;
}

double biorthonormality_check(const Trajectory& traj, const ParameterLoop& loop, int n) {
    const double gamma = extract_gamma(traj, loop, n);
    const TrajectorySample& last = traj.samples.back();
    const PolyGaussianState psi = reconstruct_state(last.state);
    const cplx lg = inner_eta_log(psi, psi, loop.point(1.0));
    // associated metric: eta scaled by the inverse squared amplitude factors
    const cplx pairing = std::exp(lg - 2.0 * dynamical_integral(loop, n) - 2.0 * gamma);
    return std::abs(pairing - cplx{1.0, 0.0});
}

} // namespace gamp
