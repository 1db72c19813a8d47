#include "gamp/poly_gaussian.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gamp {

std::vector<double> hermite_coefficients(int n) {
    if (n < 0) {
        throw std::invalid_argument("hermite_coefficients: negative order");
    }
    // H_0 = 1, H_1 = 2x, H_{k+1} = 2x H_k - 2k H_{k-1}
    std::vector<double> prev{1.0};
    if (n == 0) return prev;
    std::vector<double> cur{0.0, 2.0};
    for (int k = 1; k < n; ++k) {
        std::vector<double> next(std::size_t(k) + 2, 0.0);
        for (std::size_t j = 0; j < cur.size(); ++j) {
            next[j + 1] += 2.0 * cur[j];
        }
        for (std::size_t j = 0; j < prev.size(); ++j) {
            next[j] -= 2.0 * double(k) * prev[j];
        }
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

namespace {

template <typename T>
T hermite_recurrence(int n, T x) {
    if (n < 0) {
        throw std::invalid_argument("hermite: negative order");
    }
    T hkm1 = T(1.0);
    if (n == 0) return hkm1;
    T hk = 2.0 * x;
    for (int k = 1; k < n; ++k) {
        T hkp1 = 2.0 * x * hk - 2.0 * double(k) * hkm1;
        hkm1 = hk;
        hk = hkp1;
    }
    return hk;
}

} // namespace

double hermite(int n, double x) { return hermite_recurrence(n, x); }
cplx hermite(int n, cplx x) { return hermite_recurrence(n, x); }

double hermite_function(int n, double x) {
    // (2^n n! sqrt(pi))^{-1/2} H_n(x) e^{-x^2/2}, log-scaled to dodge overflow
    const double log_norm = -0.5 * (double(n) * std::numbers::ln2 + std::lgamma(double(n) + 1.0) +
                                    0.5 * std::log(std::numbers::pi));
    return hermite(n, x) * std::exp(log_norm - 0.5 * x * x);
}

cplx PolyGaussianState::poly_at(cplx q) const {
    cplx v{0.0, 0.0};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        v = v * q + *it;
    }
    return v;
}

cplx PolyGaussianState::value_unscaled(cplx q) const {
    return poly_at(q) * std::exp(-0.5 * a * q * q);
}

cplx PolyGaussianState::value(cplx q) const {
    return poly_at(q) * std::exp(log_norm - 0.5 * a * q * q);
}

PolyGaussianState PolyGaussianState::times_gauss_phase(double c) const {
    PolyGaussianState out = *this;
    out.a = a - cplx(0.0, 2.0 * c);
    return out;
}

PolyGaussianState PolyGaussianState::substitute_minus_iq() const {
    PolyGaussianState out = *this;
    // (-i)^k cycles with period 4; the Gaussian exponent picks up (-i)^2 = -1
    const cplx minus_i{0.0, -1.0};
    cplx power{1.0, 0.0};
    for (auto& c : out.coeffs) {
        c *= power;
        power *= minus_i;
    }
    out.a = -a;
    return out;
}

std::vector<cplx> poly_multiply(std::span<const cplx> u, std::span<const cplx> v) {
    if (u.empty() || v.empty()) return {};
    std::vector<cplx> out(u.size() + v.size() - 1, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < u.size(); ++i) {
        for (std::size_t j = 0; j < v.size(); ++j) {
            out[i + j] += u[i] * v[j];
        }
    }
    return out;
}

PolyGaussianState PolyGaussianState::times_polynomial(std::span<const cplx> poly) const {
    PolyGaussianState out = *this;
    out.coeffs = poly_multiply(coeffs, poly);
    out.level.reset();
    return out;
}

PolyGaussianState PolyGaussianState::differentiate() const {
    // (P e^{-aq^2/2})' = (P' - a q P) e^{-aq^2/2}
    PolyGaussianState out = *this;
    out.level.reset();
    out.coeffs.assign(coeffs.size() + 1, cplx{0.0, 0.0});
    for (std::size_t k = 1; k < coeffs.size(); ++k) {
        out.coeffs[k - 1] += double(k) * coeffs[k];
    }
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        out.coeffs[k + 1] -= a * coeffs[k];
    }
    while (out.coeffs.size() > 1 && std::abs(out.coeffs.back()) == 0.0) {
        out.coeffs.pop_back();
    }
    return out;
}

} // namespace gamp
