#include "gamp/params.hpp"

#include <cmath>
#include <string>

namespace gamp {

void ParameterPoint::validate() const {
    if (!(Z > 0.0)) {
        throw regime_error("ParameterPoint: Z must be positive (Z = " + std::to_string(Z) + ")");
    }
    if (!(discriminant() > 0.0)) {
        throw regime_error("ParameterPoint: imaginary-frequency regime requires Y^2 - XZ > 0 "
                           "(Y^2 - XZ = " + std::to_string(discriminant()) + ")");
    }
}

double omega(const ParameterPoint& p) {
    p.validate();
    return std::sqrt(p.discriminant());
}

SpectralData energy(const ParameterPoint& p, int n) {
    if (n < 0) {
        throw std::invalid_argument("energy: level n must be nonnegative");
    }
    const double w = omega(p);
    return SpectralData{w, n, (n + 0.5) * w};
}

} // namespace gamp
