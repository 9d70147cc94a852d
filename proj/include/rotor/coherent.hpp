#ifndef ROTOR_COHERENT_HPP
#define ROTOR_COHERENT_HPP

#include <array>
#include <vector>

#include "rotor/rotor_core.hpp"

namespace rotor {

using Vec2 = std::array<double, 2>;

/**
 * Particle of mass M on a circle of radius R in uniform rotation with angular
 * frequency omega. The rotational coherent state |Z> = exp(z b_u^+ - z^* b_u)|0>
 * has z = sqrt(J/hbar) e^{-i phase}, J = M omega R^2.
 */
struct CoherentStateSpec {
    double mass = 1.0;
    double omega = 1.0;
    double radius = 1.0;
    double phase = 0.0;
    double hbar = 1.0;

    void validate() const;

    double action() const { return mass * omega * radius * radius; }
    double momentum() const { return mass * omega * radius; }
    /// Position width a = hbar / (M omega).
    double width_q() const { return hbar / (mass * omega); }
    /// Momentum width b = hbar M omega.
    double width_p() const { return hbar * mass * omega; }
    Complex z() const;
};

/// Isotropic Gaussian (1/(pi^2 hbar^2)) exp(-(q-u)^2/a - (p-v)^2/b) centred on the
/// orbit point u = R(cos phi, sin phi), v = P(-sin phi, cos phi).
double gaussian_wigner_point(const CoherentStateSpec& spec, const Vec2& q, const Vec2& p, double angle);

struct WeightDistribution {
    std::vector<double> weights;
    double mean = 0.0;

    double total() const;
};

/// Tail mass allowed beyond n_max in poisson_weights.
inline constexpr double kPoissonTailTolerance = 1e-10;

/// w_n = e^{-lambda} lambda^n / n! for n = 0..n_max via w_{n+1} = w_n lambda / (n + 1).
/// Throws TailMassError if 1 - sum w_n exceeds kPoissonTailTolerance.
WeightDistribution poisson_weights(double lambda, int n_max);

/// |<n|Z>|^2 from the normal-ordered expansion
/// e^{z b^+ - z^* b}|0> = e^{-|z|^2/2} sum_n z^n / sqrt(n!) |n>.
double coherent_overlap_weight(Complex z, int n);

/// -sum w_n ln w_n with 0 ln 0 = 0.
double distribution_entropy(const WeightDistribution& w);

/// [1 + ln(2 pi lambda)] / 2, entropy of a Gaussian with mean and variance lambda.
double gaussian_reference_entropy(double lambda);

} // namespace rotor

#endif
