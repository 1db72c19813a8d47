#include "gamp/spectral.hpp"

#include "gamp/errors.hpp"
#include "gamp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gamp {

namespace {

constexpr cplx iu{0.0, 1.0};

void require_integrable(cplx s) {
    const double scale = 1.0 + std::abs(s);
    if (std::abs(s) == 0.0) {
        throw singular_pairing_error("gaussian_moment: degenerate Fresnel coefficient s = 0");
    }
    if (s.real() < -1e-12 * scale) {
        throw singular_pairing_error("gaussian_moment: Re(s) < 0, integral diverges");
    }
}

// Clamp a roundoff-negative real part to the Fresnel boundary.
cplx sanitize(cplx s) {
    if (s.real() < 0.0) s = cplx(0.0, s.imag());
    return s;
}

} // namespace

cplx gaussian_moment(int k, cplx s) {
    if (k < 0) {
        throw std::invalid_argument("gaussian_moment: order must be >= 0");
    }
    require_integrable(s);
    s = sanitize(s);
    const double half_order = double(k) + 0.5;
    return std::tgamma(half_order) * std::exp(-half_order * std::log(s));
}

cplx gaussian_moment_power(int m, cplx s) {
    if (m < 0) {
        throw std::invalid_argument("gaussian_moment_power: power must be >= 0");
    }
    if (m % 2 == 1) return {0.0, 0.0};
    return gaussian_moment(m / 2, s);
}

PolyGaussianState apply_metric(const PolyGaussianState& psi, const ParameterPoint& p) {
    p.validate();
    PolyGaussianState out = psi.substitute_minus_iq().times_gauss_phase(-p.Y / p.Z);
    out.log_norm += cplx(0.0, -0.25 * std::numbers::pi);
    return out;
}

namespace {

// Shared core of the two pairing entry points: the moment sum with the
// exp(log_norm) scale kept separate.
struct PairingParts {
    cplx sum;       // integral with both log_norms dropped
    cplx log_scale; // conj(log_norm1) + log_norm of the metric image
};

PairingParts pairing_parts(const PolyGaussianState& psi1, const PolyGaussianState& psi2,
                           const ParameterPoint& p) {
    const PolyGaussianState m2 = apply_metric(psi2, p);

    std::vector<cplx> c1(psi1.coeffs.size());
    std::transform(psi1.coeffs.begin(), psi1.coeffs.end(), c1.begin(),
                   [](cplx c) { return std::conj(c); });
    const std::vector<cplx> prod = poly_multiply(c1, m2.coeffs);

    const cplx s = 0.5 * (std::conj(psi1.a) + m2.a);
    require_integrable(s);
    const cplx ss = sanitize(s);

    cplx sum{0.0, 0.0};
    for (std::size_t m = 0; m < prod.size(); m += 2) {
        sum += prod[m] * gaussian_moment(int(m) / 2, ss);
    }
    return {sum, std::conj(psi1.log_norm) + m2.log_norm};
}

} // namespace

cplx inner_eta(const PolyGaussianState& psi1, const PolyGaussianState& psi2,
               const ParameterPoint& p) {
    const PairingParts parts = pairing_parts(psi1, psi2, p);
    return parts.sum * std::exp(parts.log_scale);
}

cplx inner_eta_log(const PolyGaussianState& psi1, const PolyGaussianState& psi2,
                   const ParameterPoint& p) {
    const PairingParts parts = pairing_parts(psi1, psi2, p);
    if (std::abs(parts.sum) == 0.0) {
        throw singular_pairing_error("inner_eta_log: pairing vanishes identically");
    }
    return std::log(parts.sum) + parts.log_scale;
}

PolyGaussianState snapshot_state(const ParameterPoint& p, int n) {
    if (n < 0) {
        throw std::invalid_argument("snapshot_state: level must be >= 0");
    }
    p.validate();
    const double w = omega(p);

    PolyGaussianState psi;
    psi.a = iu * (p.Y + w) / p.Z;
    psi.level = n;

    const cplx beta = std::sqrt(iu * w / p.Z);
    const std::vector<double> h = hermite_coefficients(n);
    psi.coeffs.resize(h.size());
    cplx beta_pow{1.0, 0.0};
    for (std::size_t k = 0; k < h.size(); ++k) {
        psi.coeffs[k] = h[k] * beta_pow;
        beta_pow *= beta;
    }

    // Gauge fix: unit eta-norm, real positive leading coefficient, log_norm = 0.
    const cplx nrm = inner_eta(psi, psi, p);
    if (!(nrm.real() > 0.0) || std::abs(nrm.imag()) > 1e-8 * std::abs(nrm)) {
        throw gauge_error("snapshot_state: eta-norm is not real positive at level " +
                          std::to_string(n));
    }
    const double scale = 1.0 / std::sqrt(nrm.real());
    cplx lead = psi.coeffs.back() * scale;
    const cplx phase = lead / std::abs(lead);
    for (auto& c : psi.coeffs) {
        c *= scale / phase;
    }
    return psi;
}

std::vector<std::vector<cplx>> gram_matrix(const ParameterPoint& p,
                                           const std::vector<int>& levels) {
    std::vector<PolyGaussianState> states;
    states.reserve(levels.size());
    for (int n : levels) {
        states.push_back(snapshot_state(p, n));
    }
    std::vector<std::vector<cplx>> g(levels.size(), std::vector<cplx>(levels.size()));
    for (std::size_t j = 0; j < states.size(); ++j) {
        for (std::size_t k = 0; k < states.size(); ++k) {
            g[j][k] = inner_eta(states[j], states[k], p);
        }
    }
    return g;
}

double gram_deviation(const ParameterPoint& p, const std::vector<int>& levels) {
    const auto g = gram_matrix(p, levels);
    double worst = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
        for (std::size_t k = 0; k < g.size(); ++k) {
            const cplx expected = (j == k) ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
            worst = std::max(worst, std::abs(g[j][k] - expected));
        }
    }
    return worst;
}

PolyGaussianState apply_hamiltonian(const PolyGaussianState& psi, const ParameterPoint& p) {
    // H psi = -(Z/2) psi'' - i Y q psi' - (i Y / 2) psi + (X/2) q^2 psi
    const PolyGaussianState d1 = psi.differentiate();
    const PolyGaussianState d2 = d1.differentiate();

    auto axpy_shifted = [](std::vector<cplx>& acc, cplx alpha,
                           const std::vector<cplx>& v, std::size_t shift) {
        if (acc.size() < v.size() + shift) acc.resize(v.size() + shift, cplx{0.0, 0.0});
        for (std::size_t k = 0; k < v.size(); ++k) {
            acc[k + shift] += alpha * v[k];
        }
    };

    PolyGaussianState out = psi;
    out.level.reset();
    out.coeffs.clear();
    axpy_shifted(out.coeffs, -0.5 * p.Z, d2.coeffs, 0);
    axpy_shifted(out.coeffs, -iu * p.Y, d1.coeffs, 1);
    axpy_shifted(out.coeffs, -0.5 * iu * p.Y, psi.coeffs, 0);
    axpy_shifted(out.coeffs, 0.5 * p.X, psi.coeffs, 2);
    return out;
}

CubicCheckReport cubic_operator_check(double lambda, double q_min, double q_max, int points) {
    if (!(lambda > 0.0)) {
        throw std::invalid_argument("cubic_operator_check: lambda must be positive");
    }
    if (!(q_min > 0.0) || !(q_max > q_min) || points < 32) {
        throw std::invalid_argument("cubic_operator_check: bad grid specification");
    }

    CubicCheckReport report;
    report.lambda = lambda;

    auto chi = [lambda](double q) {
        return std::pow(q, -1.5) * std::exp(-lambda / (4.0 * q * q));
    };

    // chi varies on a scale ~ q^3/lambda near the origin, so a geometric grid
    // (uniform in u = log q, with d/dq = (1/q) d/du) keeps the stencil resolved.
    const double u_min = std::log(q_min);
    const double h = (std::log(q_max) - u_min) / (points - 1);
    std::vector<double> q(points), f(points);
    for (int i = 0; i < points; ++i) {
        q[i] = std::exp(u_min + i * h);
        f[i] = chi(q[i]);
    }

    // 8th-order central first derivative in u
    constexpr double c[4] = {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
    double worst = 0.0;
    for (int i = 4; i < points - 4; ++i) {
        double du = 0.0;
        for (int k = 1; k <= 4; ++k) {
            du += c[k - 1] * (f[i + k] - f[i - k]);
        }
        const double dchi = du / (h * q[i]);
        // O chi - (-i lambda) chi = -i (2 q^3 chi' + 3 q^2 chi - lambda chi)
        const double t1 = 2.0 * q[i] * q[i] * q[i] * dchi;
        const double t2 = 3.0 * q[i] * q[i] * f[i];
        const double t3 = lambda * f[i];
        const double residual = std::abs(t1 + t2 - t3);
        const double denom = std::abs(t1) + t2 + t3;
        worst = std::max(worst, residual / denom);
    }
    report.max_rel_residual = worst;

    auto chi_sq = [lambda](double s) {
        if (s < 1e-6) return 0.0; // exponent below -5e11: underflows cleanly
        return std::exp(-lambda / (2.0 * s * s)) / (s * s * s);
    };
    report.half_line_norm = integrate_to_infinity(chi_sq, 0.0, 1e-12, 1e-12).value;
    report.norm_error = std::abs(report.half_line_norm - 1.0 / lambda);
    return report;
}

} // namespace gamp
