#pragma once

#include "gamp/params.hpp"
#include "gamp/poly_gaussian.hpp"

#include <complex>
#include <vector>

namespace gamp {

/// Gaussian moment integral over the full line,
///   integral q^{2k} exp(-s q^2) dq = Gamma(k + 1/2) s^{-(k+1/2)},
/// with the principal branch of the power. Requires k >= 0, s != 0 and
/// Re(s) >= 0 (the Fresnel-regularized boundary Re(s) = 0 included); otherwise
/// the integral diverges and a singular_pairing_error is thrown.
cplx gaussian_moment(int k, cplx s);

/// Same integral for an arbitrary power m >= 0: zero for odd m by symmetry.
cplx gaussian_moment_power(int m, cplx s);

/// Action of the metric operator eta on a state:
///   (eta psi)(q) = exp(-i pi/4) * exp(-i (Y/Z) q^2) * psi(-i q).
/// Exact within the polynomial-Gaussian family.
PolyGaussianState apply_metric(const PolyGaussianState& psi, const ParameterPoint& p);

/// Metric pairing <psi1 | eta psi2> = integral conj(psi1(q)) (eta psi2)(q) dq,
/// evaluated in closed form via Gaussian moments. Includes the states'
/// exp(log_norm) scales; use inner_eta_log when those overflow.
cplx inner_eta(const PolyGaussianState& psi1, const PolyGaussianState& psi2,
               const ParameterPoint& p);

/// Principal-branch log of the metric pairing, computed without forming
/// exp(conj(log_norm1) + log_norm2). Safe for states with |Re log_norm| of
/// hundreds, as produced by long evolutions.
cplx inner_eta_log(const PolyGaussianState& psi1, const PolyGaussianState& psi2,
                   const ParameterPoint& p);

/// Gauge-fixed snapshot eigenstate of level n at parameter point p:
///   psi_n(q) = N_n H_n(beta* q) exp(-a* q^2 / 2),
///   a*    = i (Y + omega) / Z,
///   beta* = principal sqrt(i omega / Z),
/// normalized to <psi_n | eta psi_n> = 1 with real positive leading polynomial
/// coefficient; the normalization is folded into coeffs and log_norm = 0.
PolyGaussianState snapshot_state(const ParameterPoint& p, int n);

/// Matrix G[j][k] = <psi_{n_j} | eta psi_{n_k}> over the given levels.
std::vector<std::vector<cplx>> gram_matrix(const ParameterPoint& p,
                                           const std::vector<int>& levels);

/// Worst deviation of the Gram matrix from the identity.
double gram_deviation(const ParameterPoint& p, const std::vector<int>& levels);

/// Exact action of H = (1/2)[Z p^2 + Y (pq + qp) + X q^2] within the family.
PolyGaussianState apply_hamiltonian(const PolyGaussianState& psi, const ParameterPoint& p);

/// Independent fixture from a different operator family: the function
///   chi_lambda(q) = q^{-3/2} exp(-lambda / (4 q^2)),  q > 0,
/// satisfies (q^3 p + p q^3) chi = -i lambda chi exactly, and
/// integral_0^inf chi^2 dq = 1 / lambda.
struct CubicCheckReport {
    double lambda = 0.0;
    double max_rel_residual = 0.0; ///< finite-difference eigen-relation residual
    double half_line_norm = 0.0;   ///< quadrature value of integral_0^inf chi^2
    double norm_error = 0.0;       ///< |half_line_norm - 1/lambda|
};

/// Checks the cubic-operator eigen-relation on a geometric grid of `points`
/// samples spanning [q_min, q_max] (8th-order finite differences in log q) and
/// the half-line normalization by semi-infinite quadrature.
CubicCheckReport cubic_operator_check(double lambda, double q_min = 0.05,
                                      double q_max = 10.0, int points = 4000);

} // namespace gamp
