// Test-only reference computations. Nothing here calls the closed-form
// kernels under test; everything goes through direct quadrature or sampling.
#ifndef ROTOR_TESTS_ORACLES_HPP
#define ROTOR_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "rotor/rotor_core.hpp"
#include "rotor/special.hpp"

namespace oracle {

using Complex = std::complex<double>;

inline double integrate(const std::function<double(double)>& f, double a, double b) {
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 12, 1e-13);
}

inline Complex integrate_complex(const std::function<Complex(double)>& f, double a, double b) {
    const double re = integrate([&](double x) { return f(x).real(); }, a, b);
    const double im = integrate([&](double x) { return f(x).imag(); }, a, b);
    return {re, im};
}

/// int_0^x sin(t)/t dt by adaptive Gauss-Kronrod.
inline double sine_integral(double x) {
    return integrate([](double t) { return t == 0.0 ? 1.0 : std::sin(t) / t; }, 0.0, x);
}

/// (1/(2 pi hbar)) int_{start}^{start + 2 pi} e^{-i gamma J/hbar} psi(phi + gamma/2) conj(psi(phi - gamma/2)) dgamma,
/// using the angle representation psi(phi) directly.
inline Complex wigner_quadrature(const rotor::AngularWaveFunction& psi, double phi, double J,
                                 double start = -rotor::kPi) {
    const double hbar = psi.spec().hbar;
    auto integrand = [&](double g) {
        return std::polar(1.0, -g * J / hbar) * psi.value(phi + 0.5 * g) * std::conj(psi.value(phi - 0.5 * g));
    };
    return integrate_complex(integrand, start, start + rotor::kTwoPi) / (rotor::kTwoPi * hbar);
}

/// (1/2 pi) int_{-pi}^{pi} phi e^{i k phi} dphi.
inline Complex angle_fourier_integral(int k) {
    auto f = [k](double phi) { return phi * std::polar(1.0, k * phi); };
    return integrate_complex(f, -rotor::kPi, rotor::kPi) / rotor::kTwoPi;
}

/// Fourier coefficients (1/sqrt(2 pi)) int e^{-i n phi} g(phi) dphi from a fine uniform sampling.
inline std::vector<Complex> dft_coefficients(const std::function<Complex(double)>& g, int cutoff,
                                             std::size_t samples = 4096) {
    std::vector<Complex> c(2 * static_cast<std::size_t>(cutoff) + 1);
    const double h = rotor::kTwoPi / static_cast<double>(samples);
    for (int n = -cutoff; n <= cutoff; ++n) {
        Complex s{0.0, 0.0};
        for (std::size_t j = 0; j < samples; ++j) {
            const double phi = -rotor::kPi + h * static_cast<double>(j);
            s += std::polar(1.0, -n * phi) * g(phi);
        }
        c[n + cutoff] = s * h / std::sqrt(rotor::kTwoPi);
    }
    return c;
}

/// Random state with coefficients on the selected parity (0 = even, 1 = odd, -1 = any).
inline rotor::AngularWaveFunction random_state(std::mt19937_64& rng, int cutoff, int parity,
                                               const rotor::RotorSpec& spec = {}) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Complex> c(2 * static_cast<std::size_t>(cutoff) + 1);
    for (int n = -cutoff; n <= cutoff; ++n) {
        const bool keep = parity < 0 || ((n % 2 + 2) % 2) == parity;
        if (keep) c[n + cutoff] = {gauss(rng), gauss(rng)};
    }
    return rotor::AngularWaveFunction::from_coefficients(std::move(c), spec);
}

} // namespace oracle

#endif
