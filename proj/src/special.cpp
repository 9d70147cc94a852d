#include "rotor/special.hpp"

#include <cmath>
#include <complex>
#include <limits>

namespace rotor {

double sinc_j0(double x) {
    const double ax = std::abs(x);
    if (ax < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
    }
    return std::sin(x) / x;
}

double sin_pi(double t) {
    // reduce to r in [-1, 1], then fold into [-1/2, 1/2] using sin(pi r) = sin(pi (1 - r))
    double r = t - 2.0 * std::nearbyint(t / 2.0);
    if (r > 0.5) {
        r = 1.0 - r;
    } else if (r < -0.5) {
        r = -1.0 - r;
    }
    return std::sin(kPi * r);
}

double sinc_pi(double t) {
    if (std::abs(t) < 1e-4 / kPi) return sinc_j0(kPi * t);
    return sin_pi(t) / (kPi * t);
}

namespace {

double sine_integral_series(double x) {
    // sum_k (-1)^k x^(2k+1) / ((2k+1) (2k+1)!)
    const double x2 = x * x;
    double term = x;  // x^(2k+1)/(2k+1)!
    double sum = x;
    for (int k = 1; k < 60; ++k) {
        term *= -x2 / ((2.0 * k) * (2.0 * k + 1.0));
        const double add = term / (2.0 * k + 1.0);
        sum += add;
        if (std::abs(add) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

double sine_integral_continued_fraction(double x) {
    // Lentz evaluation of E1(ix); Si(x) = pi/2 + Im(e^{-ix} h).
    using cd = std::complex<double>;
    constexpr double tiny = 1e-300;
    cd b(1.0, x);
    cd c(1.0 / tiny, 0.0);
    cd d = 1.0 / b;
    cd h = d;
    for (int i = 2; i < 1000; ++i) {
        const double a = -static_cast<double>((i - 1) * (i - 1));
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const cd del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    h *= cd(std::cos(x), -std::sin(x));
    return 0.5 * kPi + h.imag();
}

} // namespace

double sine_integral(double x) {
    if (x < 0.0) return -sine_integral(-x);
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 0.5 * kPi;
    return x <= 4.0 ? sine_integral_series(x) : sine_integral_continued_fraction(x);
}

} // namespace rotor
