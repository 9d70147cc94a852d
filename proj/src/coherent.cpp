#include "rotor/coherent.hpp"

#include <cmath>
#include <string>

#include "rotor/errors.hpp"
#include "rotor/special.hpp"

namespace rotor {

void CoherentStateSpec::validate() const {
    if (!(mass > 0.0)) throw DomainError("mass must be positive");
    if (!(omega > 0.0)) throw DomainError("omega must be positive");
    if (!(radius >= 0.0)) throw DomainError("radius must be non-negative");
    if (!(hbar > 0.0)) throw DomainError("hbar must be positive");
}

Complex CoherentStateSpec::z() const { return std::polar(std::sqrt(action() / hbar), -phase); }

double gaussian_wigner_point(const CoherentStateSpec& spec, const Vec2& q, const Vec2& p, double angle) {
    spec.validate();
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    const Vec2 u{spec.radius * c, spec.radius * s};
    const Vec2 v{-spec.momentum() * s, spec.momentum() * c};
    const double dq = (q[0] - u[0]) * (q[0] - u[0]) + (q[1] - u[1]) * (q[1] - u[1]);
    const double dp = (p[0] - v[0]) * (p[0] - v[0]) + (p[1] - v[1]) * (p[1] - v[1]);
    const double peak = 1.0 / (kPi * kPi * spec.hbar * spec.hbar);
    return peak * std::exp(-dq / spec.width_q() - dp / spec.width_p());
}

double WeightDistribution::total() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
}

WeightDistribution poisson_weights(double lambda, int n_max) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw DomainError("Poisson mean must be finite and non-negative");
    if (n_max < 0) throw DomainError("n_max must be non-negative");
    WeightDistribution out;
    out.weights.resize(static_cast<std::size_t>(n_max) + 1);
    double w = std::exp(-lambda);
    for (int n = 0; n <= n_max; ++n) {
        out.weights[n] = w;
        w *= lambda / (n + 1.0);
    }
    const double tail = 1.0 - out.total();
    if (tail > kPoissonTailTolerance) {
        throw TailMassError("n_max = " + std::to_string(n_max) + " leaves tail mass " + std::to_string(tail));
    }
    double mean = 0.0;
    for (int n = 0; n <= n_max; ++n) mean += n * out.weights[n];
    out.mean = mean;
    return out;
}

double coherent_overlap_weight(Complex z, int n) {
    if (n < 0) throw DomainError("Fock index must be non-negative");
    Complex amplitude = std::exp(-0.5 * std::norm(z));
    for (int k = 1; k <= n; ++k) amplitude *= z / std::sqrt(static_cast<double>(k));
    return std::norm(amplitude);
}

double distribution_entropy(const WeightDistribution& w) {
    double s = 0.0;
    for (double p : w.weights) {
        if (p > 0.0) s -= p * std::log(p);
    }
    return s;
}

double gaussian_reference_entropy(double lambda) {
    if (!(lambda > 0.0)) throw DomainError("Gaussian reference entropy needs lambda > 0");
    return 0.5 * (1.0 + std::log(kTwoPi * lambda));
}

} // namespace rotor
