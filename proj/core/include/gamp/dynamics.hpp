#pragma once

#include "gamp/loop.hpp"
#include "gamp/poly_gaussian.hpp"

#include <vector>

namespace gamp {

/// The exact finite-dimensional reduction of the Schrödinger equation on the
/// ansatz psi(q, t) = exp(logN) H_n(beta q) exp(-a q^2 / 2), with beta2 = beta^2.
struct EvolutionState {
    cplx a{0.0, 0.0};
    cplx beta2{0.0, 0.0};
    cplx logN{0.0, 0.0};
    int n = 0;
    double t = 0.0;
};

struct EvolutionDerivatives {
    cplx da{0.0, 0.0};
    cplx dbeta2{0.0, 0.0};
    cplx dlogN{0.0, 0.0};
};

/// Right-hand side of the reduced system, obtained by substituting the ansatz
/// into i dpsi/dt = H psi and matching powers of q:
///   da/dt     = -i Z a^2 - 2 Y a + i X
///   dbeta2/dt = -2 i beta2 (Z a - i Y - Z beta2)
///   dlogN/dt  = -(i/2)(Z a - i Y) - i n Z beta2
/// Both Riccati roots a = i(Y +/- omega)/Z are stationary; the snapshot root
/// i(Y + omega)/Z also freezes beta2 = i omega / Z and gives
/// Re dlogN/dt = (n + 1/2) omega.
EvolutionDerivatives ode_rhs(const EvolutionState& st, const ParameterPoint& p);

/// psi as a polynomial-Gaussian state: Hermite coefficients in beta q (principal
/// sqrt of beta2; the branch only flips an overall sign of definite parity, so
/// eta-norms are branch independent), log_norm = logN.
PolyGaussianState reconstruct_state(const EvolutionState& st);

struct TrajectorySample {
    double t = 0.0;
    EvolutionState state;
    double eta_norm_log = 0.0;    ///< Re log <psi| eta |psi> at the current point
    double dynamical = 0.0;       ///< running (n+1/2) integral of omega dt
    double gamma_running = 0.0;   ///< running amplitude estimate
};

struct Trajectory {
    std::vector<TrajectorySample> samples; ///< uniform in t, strictly increasing
    int n = 0;
    double period = 0.0;
    int ode_steps = 0;
};

/// Evolves the snapshot state of level n once around the loop over t in [0, T].
///
/// The growing Riccati branch is violently repelling forward in time, so a is
/// integrated backward from its snapshot value at t = T (where it attracts) and
/// sampled densely; beta2, logN and the running dynamical integral are then
/// integrated forward on top of that width trajectory. The reconstructed state
/// satisfies the forward Schrödinger equation either way; logN is shifted so
/// the t = 0 state is eta-normalized in the spectral module's gauge.
Trajectory evolve(const ParameterLoop& loop, int n, double ode_tol = 1e-10,
                  int output_points = 257);

/// (1/2) log <psi(T)| eta |psi(T)> minus the dynamical integral, evaluated in
/// log space. Throws extraction_error when the final pairing is not real
/// positive (relative imaginary part above 1e-8).
double extract_gamma(const Trajectory& traj, const ParameterLoop& loop, int n);

/// Dynamics engine with the leading adiabatic error cancelled: the mean of the
/// extractions from the loop and its reversal (sign flipped), which converges
/// as 1/T^2 instead of 1/T.
double gamma_dynamics(const ParameterLoop& loop, int n, double ode_tol = 1e-10);

struct ConvergenceRow {
    double period = 0.0;
    double gamma_dyn = 0.0;
    double gamma_closed = 0.0;
    double abs_err = 0.0;
    double slope = 0.0; ///< local log-log slope vs the previous row; 0 for the first
};

/// Runs gamma_dynamics over an increasing ladder of traversal times and
/// tabulates the error against the closed form.
std::vector<ConvergenceRow> convergence_study(const ParameterLoop& loop, int n,
                                              const std::vector<double>& periods,
                                              double ode_tol = 1e-10);

/// Deviation |<Psi(T)| eta~ |Psi(T)> - 1| of the associated-metric pairing,
/// with eta~ = eta * exp(-2 * dynamical integral) * exp(-2 gamma).
double biorthonormality_check(const Trajectory& traj, const ParameterLoop& loop, int n);

} // namespace gamp
