#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

namespace gamp {

using cplx = std::complex<double>;

/// Ascending coefficients of the physicists' Hermite polynomial H_n.
std::vector<double> hermite_coefficients(int n);

/// H_n(x) by the three-term recurrence H_{k+1} = 2x H_k - 2k H_{k-1}.
double hermite(int n, double x);
cplx hermite(int n, cplx x);

/// Unit-L2-normalized Hermite function h_n(x) = (2^n n! sqrt(pi))^{-1/2} H_n(x) e^{-x^2/2}.
double hermite_function(int n, double x);

/// A wavefunction of the form
///   psi(q) = (c_0 + c_1 q + ... + c_d q^d) * exp(-a q^2 / 2) * exp(log_norm).
///
/// The family is closed under multiplication by exp(i c q^2), the substitution
/// q -> -i q, multiplication by polynomials, and differentiation in q --
/// everything the metric operator and the Hamiltonian need.
struct PolyGaussianState {
    std::vector<cplx> coeffs;   ///< c_0 .. c_d, leading coefficient nonzero
    cplx a{0.0, 0.0};           ///< Gaussian width exponent
    cplx log_norm{0.0, 0.0};    ///< complex log-amplitude
    std::optional<int> level;   ///< snapshot index tag, when applicable

    int degree() const { return int(coeffs.size()) - 1; }

    /// Polynomial factor at q (no Gaussian, no log_norm scale).
    cplx poly_at(cplx q) const;
    /// Full value including exp(log_norm); overflows for large |Re log_norm|.
    cplx value(cplx q) const;
    /// Value with log_norm dropped; safe for residual checks on grids.
    cplx value_unscaled(cplx q) const;

    /// psi -> exp(i c q^2) psi  (width shift a -> a - 2ic).
    PolyGaussianState times_gauss_phase(double c) const;
    /// psi(q) -> psi(-i q); the Gaussian exponent flips sign.
    PolyGaussianState substitute_minus_iq() const;
    PolyGaussianState times_polynomial(std::span<const cplx> poly) const;
    /// d/dq within the family: P -> P' - a q P.
    PolyGaussianState differentiate() const;
};

/// Polynomial product of ascending coefficient vectors.
std::vector<cplx> poly_multiply(std::span<const cplx> u, std::span<const cplx> v);

} // namespace gamp
