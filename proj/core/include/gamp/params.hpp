#pragma once

#include "gamp/errors.hpp"

namespace gamp {

/// One sample of the driving parameters of the generalized harmonic oscillator
///   H = (1/2) [ Z p^2 + Y (pq + qp) + X q^2 ].
/// The imaginary-frequency regime requires Y^2 - X Z > 0; we additionally fix
/// the convention Z > 0 so the frequency branch stays globally smooth.
struct ParameterPoint {
    double X = 0.0; ///< coefficient of q^2 / 2
    double Y = 0.0; ///< coefficient of (pq + qp) / 2
    double Z = 1.0; ///< coefficient of p^2 / 2

    /// Y^2 - X Z. Positive inside the admissible regime.
    double discriminant() const { return Y * Y - X * Z; }

    bool in_regime() const { return Z > 0.0 && discriminant() > 0.0; }

    /// Throws regime_error when outside the imaginary-frequency regime.
    void validate() const;
};

/// omega = +sqrt(Y^2 - XZ), the magnitude of the purely imaginary frequency.
double omega(const ParameterPoint& p);

/// Spectral data of level n: the eigenvalue of H is i * growth_rate with
/// growth_rate = (n + 1/2) * omega.
struct SpectralData {
    double omega = 0.0;
    int level = 0;
    double growth_rate = 0.0;
};

SpectralData energy(const ParameterPoint& p, int n);

} // namespace gamp
