#pragma once

#include <stdexcept>
#include <string>

namespace gamp {

/// Parameter point outside the imaginary-frequency regime (Y^2 - XZ <= 0 or Z <= 0).
class regime_error : public std::invalid_argument {
public:
    explicit regime_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Metric pairing has a vanishing or growing Fresnel exponent; the eta-weighted
/// integral is undefined.
class singular_pairing_error : public std::domain_error {
public:
    explicit singular_pairing_error(const std::string& what) : std::domain_error(what) {}
};

/// The gauge-fixed snapshot family is discontinuous between adjacent samples.
class gauge_error : public std::runtime_error {
public:
    explicit gauge_error(const std::string& what) : std::runtime_error(what) {}
};

/// Quadrature or ODE stepping failed to reach the requested tolerance.
class integration_error : public std::runtime_error {
public:
    integration_error(const std::string& what, double last_good = 0.0)
        : std::runtime_error(what), last_good_position(last_good) {}
    double last_good_position;
};

/// The evolved state's eta-norm is not real positive; no amplitude can be read off.
class extraction_error : public std::runtime_error {
public:
    explicit extraction_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace gamp
