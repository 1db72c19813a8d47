#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gamp/amplitude.hpp"
#include "gamp/dynamics.hpp"
#include "gamp/errors.hpp"
#include "gamp/spectral.hpp"

#include "oracles.hpp"

#include <cmath>
#include <random>

using namespace gamp;

namespace {

ParameterLoop ellipse(double T) { return make_ellipse(2.0, 0.5, 1.0, 0.5, T); }
ParameterLoop wobble(double T) { return make_constant_x_wobble(2.0, 1.0, 3.0, 0.5, T); }

} // namespace

TEST_CASE("ode_rhs: snapshot fixed point") {
    const ParameterPoint p{3.0, 2.0, 1.0};
    EvolutionState st;
    st.a = {0.0, 3.0};
    st.beta2 = {0.0, 1.0};

    st.n = 0;
    EvolutionDerivatives d = ode_rhs(st, p);
    CHECK(std::abs(d.da) <= 1e-14);
    CHECK(std::abs(d.dbeta2) <= 1e-14);
    CHECK(std::abs(d.dlogN - cplx{0.5, 0.0}) <= 1e-14);

    st.n = 1;
    d = ode_rhs(st, p);
    CHECK(d.dlogN.real() == doctest::Approx(1.5).epsilon(1e-14));
}

TEST_CASE("ode_rhs: the rejected Riccati branch is also stationary") {
    for (auto p : {ParameterPoint{3.0, 2.0, 1.0}, ParameterPoint{0.0, 2.0, 1.0},
                   ParameterPoint{1.0, -2.0, 2.0}}) {
        EvolutionState st;
        st.a = cplx{0.0, (p.Y - omega(p)) / p.Z};
        CHECK(std::abs(ode_rhs(st, p).da) <= 1e-13);
        st.a = cplx{0.0, (p.Y + omega(p)) / p.Z};
        CHECK(std::abs(ode_rhs(st, p).da) <= 1e-13);
    }
}

TEST_CASE("frozen parameters: width stationary, logN grows at (n+1/2) omega") {
    const ParameterPoint p{3.0, 2.0, 1.0};
    for (int n : {0, 1, 2}) {
        const ParameterLoop loop = make_constant_loop(p, 10.0 / omega(p));
        const Trajectory traj = evolve(loop, n);
        const cplx a0 = traj.samples.front().state.a;
        for (const auto& s : traj.samples) {
            CHECK(std::abs(s.state.a - a0) <= 1e-9);
        }
        // dynamical amplitude law at t = 1 (omega = 1 here)
        const EvolutionState at1 = [&traj]() {
            for (const auto& s : traj.samples) {
                if (s.t >= 1.0) return s.state;
            }
            return traj.samples.back().state;
        }();
        const double t1 = at1.t;
        const double growth = (at1.logN - traj.samples.front().state.logN).real();
        CHECK(growth == doctest::Approx((double(n) + 0.5) * t1).epsilon(1e-9));
    }
}

TEST_CASE("trajectory invariants") {
    const double T = 50.0 / oracles::kEllipseOmegaMin;
    const Trajectory traj = evolve(ellipse(T), 1);
    CHECK(traj.samples.size() >= 257);
    CHECK(traj.samples.front().t == 0.0);
    CHECK(traj.samples.back().t == doctest::Approx(T).epsilon(1e-14));
    for (std::size_t i = 1; i < traj.samples.size(); ++i) {
        CHECK(traj.samples[i].t > traj.samples[i - 1].t);
    }
    // initial state is eta-normalized and close to the snapshot fixed point
    CHECK(std::abs(traj.samples.front().eta_norm_log) <= 1e-10);
    const ParameterPoint p0 = ellipse(T).point(0.0);
    const cplx a_star{0.0, (p0.Y + omega(p0)) / p0.Z};
    CHECK(std::abs(traj.samples.front().state.a - a_star) <= 1e-2);
}

TEST_CASE("adiabatic tracking of the width at T = 200/omega_min") {
    const double T = 200.0 / oracles::kEllipseOmegaMin;
    const Trajectory traj = evolve(ellipse(T), 0);
    const ParameterPoint p1 = ellipse(T).point(1.0);
    const cplx a_star{0.0, (p1.Y + omega(p1)) / p1.Z};
    CHECK(std::abs(traj.samples.back().state.a - a_star) <= 1e-3);
    // beta2 tracks its snapshot value as well
    const cplx b_star{0.0, omega(p1) / p1.Z};
    CHECK(std::abs(traj.samples.back().state.beta2 - b_star) <= 1e-2);
}

TEST_CASE("reconstructed state satisfies the Schrodinger equation on a grid") {
    // independent oracle: finite-difference H applied to psi(q, t) must match
    // i d(psi)/dt computed from the ODE right-hand side, at random times
    const double T = 100.0 / oracles::kEllipseOmegaMin;
    const ParameterLoop loop = ellipse(T);
    const int n = 2;
    const Trajectory traj = evolve(loop, n);

    std::mt19937 rng(20240817);
    std::uniform_int_distribution<std::size_t> pick(1, traj.samples.size() - 2);
    const int m = 4001;
    for (int trial = 0; trial < 10; ++trial) {
        const TrajectorySample& s = traj.samples[pick(rng)];
        const ParameterPoint p = loop.point(s.t / T);
        const EvolutionDerivatives der = ode_rhs(s.state, p);
        const cplx beta = std::sqrt(s.state.beta2);
        const cplx dbeta = der.dbeta2 / (2.0 * beta);

        std::vector<double> q(m);
        std::vector<cplx> f(m), dfdt(m);
        for (int i = 0; i < m; ++i) {
            q[i] = -6.0 + 12.0 * double(i) / double(m - 1);
            const cplx gauss = std::exp(-0.5 * s.state.a * q[i] * q[i]);
            f[i] = hermite(n, beta * q[i]) * gauss;
            // d/dt of the (unscaled) ansatz at fixed q
            const cplx dpoly = 2.0 * double(n) * hermite(n - 1, beta * q[i]) * dbeta * q[i];
            dfdt[i] = (der.dlogN - 0.5 * der.da * q[i] * q[i]) * f[i] + dpoly * gauss;
        }
        const auto hf = oracles::fd_hamiltonian(q, f, p);
        double scale = 0.0, worst = 0.0;
        for (int i = 4; i + 4 < m; ++i) scale = std::max(scale, std::abs(hf[i]));
        for (int i = 4; i + 4 < m; ++i) {
            worst = std::max(worst, std::abs(cplx{0.0, 1.0} * dfdt[i] - hf[i]) / scale);
        }
        CHECK(worst <= 1e-6);
    }
}

TEST_CASE("extraction: constant loop gives zero") {
    const ParameterLoop loop = make_constant_loop({3.0, 2.0, 1.0}, 7.0);
    const Trajectory traj = evolve(loop, 0);
    CHECK(std::abs(extract_gamma(traj, loop, 0)) <= 1e-9);
}

TEST_CASE("extraction: ellipse converges to the closed form") {
    const double T = 200.0 / oracles::kEllipseOmegaMin;
    const ParameterLoop loop = ellipse(T);
    const Trajectory traj = evolve(loop, 0);
    const double g = extract_gamma(traj, loop, 0);
    CHECK(std::abs(g - oracles::kGammaRef) <= 2e-2 * std::abs(oracles::kGammaRef));
}

TEST_CASE("loop reversal flips the extracted amplitude") {
    const double T = 100.0 / oracles::kEllipseOmegaMin;
    const ParameterLoop fwd = ellipse(T);
    const ParameterLoop bwd = reverse_loop(fwd);
    const double gf = extract_gamma(evolve(fwd, 0), fwd, 0);
    const double gb = extract_gamma(evolve(bwd, 0), bwd, 0);
    // both carry the same O(1/T) even-order remainder; the sum cancels it
    CHECK(std::abs(gf + gb) <= 2e-3);
    CHECK(gf * gb < 0.0);
}

TEST_CASE("antisymmetrized dynamics engine at T = 200/omega_min") {
    const double T = 200.0 / oracles::kEllipseOmegaMin;
    for (int n : {0, 1, 2, 3}) {
        const double g = gamma_dynamics(ellipse(T), n);
        const double ref = (2.0 * n + 1.0) * oracles::kGammaRef;
        CHECK(std::abs(g - ref) <= 2e-2 * std::abs(ref));
    }
}

TEST_CASE("convergence ladder on the ellipse") {
    std::vector<double> periods;
    for (double T : {25.0, 50.0, 100.0, 200.0}) periods.push_back(T / oracles::kEllipseOmegaMin);
    const auto rows = convergence_study(ellipse(100.0), 0, periods);
    REQUIRE(rows.size() == 4);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].abs_err < rows[i - 1].abs_err);
        CHECK(rows[i].slope <= -0.8);
        // error shrink factor per period doubling (frozen after the first
        // oracle run; the antisymmetrized estimator is second order)
        const double factor = rows[i - 1].abs_err / rows[i].abs_err;
        CHECK(factor >= 3.0);
        CHECK(factor <= 5.0);
    }
    CHECK(rows[0].gamma_closed == doctest::Approx(oracles::kGammaRef).epsilon(1e-10));
}

TEST_CASE("convergence on the null loop") {
    std::vector<double> periods;
    for (double T : {25.0, 50.0, 100.0}) periods.push_back(T / oracles::kWobbleOmegaMin);
    const auto rows = convergence_study(wobble(100.0), 0, periods);
    CHECK(std::abs(rows.back().gamma_dyn) <= 1e-6);
    CHECK(std::abs(rows.back().gamma_closed) <= 1e-12);
}

TEST_CASE("biorthonormality under the associated metric") {
    const double t_long = 200.0 / oracles::kEllipseOmegaMin;
    const ParameterLoop long_loop = ellipse(t_long);
    CHECK(biorthonormality_check(evolve(long_loop, 0), long_loop, 0) <= 1e-6);

    const ParameterLoop frozen = make_constant_loop({3.0, 2.0, 1.0}, 5.0);
    CHECK(biorthonormality_check(evolve(frozen, 1), frozen, 1) <= 1e-9);
}

TEST_CASE("argument validation") {
    CHECK_THROWS_AS(evolve(ellipse(10.0), -1), std::invalid_argument);
    CHECK_THROWS_AS(evolve(ellipse(10.0), 0, -1.0), std::invalid_argument);
    const ParameterLoop loop = ellipse(10.0);
    const Trajectory traj = evolve(loop, 0);
    CHECK_THROWS_AS(extract_gamma(traj, loop, 1), std::invalid_argument);
    CHECK_THROWS_AS(extract_gamma(traj, loop.with_period(20.0), 0), std::invalid_argument);
    CHECK_THROWS_AS(convergence_study(loop, 0, {10.0, 20.0}), std::invalid_argument);
    CHECK_THROWS_AS(convergence_study(loop, 0, {30.0, 20.0, 10.0}), std::invalid_argument);
}
