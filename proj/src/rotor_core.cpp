#include "rotor/rotor_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rotor/errors.hpp"
#include "rotor/special.hpp"

namespace rotor {

namespace {

const double kInvSqrtTwoPi = 1.0 / std::sqrt(kTwoPi);

void check_cutoff(int cutoff) {
    if (cutoff < 0) throw CutoffViolation("cutoff must be non-negative, got " + std::to_string(cutoff));
}

double norm_squared(std::span<const Complex> c) {
    double s = 0.0;
    for (const auto& z : c) s += std::norm(z);
    return s;
}

// Coefficients c_n ~ I_|n|(kappa) e^{-i n angle} e^{beta n}, computed in log space.
std::vector<Complex> von_mises_coefficients(double angle, double kappa, double beta, int cutoff) {
    const std::size_t size = 2 * static_cast<std::size_t>(cutoff) + 1;
    std::vector<double> log_mag(size);
    double top = -std::numeric_limits<double>::infinity();
    for (int n = -cutoff; n <= cutoff; ++n) {
        const double bessel = std::cyl_bessel_i(static_cast<double>(std::abs(n)), kappa);
        const double lm = (bessel > 0.0 ? std::log(bessel) : -std::numeric_limits<double>::infinity()) + beta * n;
        log_mag[n + cutoff] = lm;
        top = std::max(top, lm);
    }
    std::vector<Complex> c(size);
    for (int n = -cutoff; n <= cutoff; ++n) {
        c[n + cutoff] = std::exp(log_mag[n + cutoff] - top) * std::polar(1.0, -n * angle);
    }
    return c;
}

double mean_index(std::span<const Complex> c, int cutoff) {
    double total = 0.0;
    double weighted = 0.0;
    for (int n = -cutoff; n <= cutoff; ++n) {
        const double p = std::norm(c[n + cutoff]);
        total += p;
        weighted += p * n;
    }
    return weighted / total;
}

} // namespace

void RotorSpec::validate() const {
    if (!(hbar > 0.0) || !std::isfinite(hbar)) throw DomainError("hbar must be positive and finite");
    if (!(inertia > 0.0) || !std::isfinite(inertia)) throw DomainError("inertia must be positive and finite");
}

void require_same_spec(const RotorSpec& a, const RotorSpec& b) {
    if (!(a == b)) throw SpecMismatch("rotor specs differ (hbar or inertia)");
}

AngleGrid::AngleGrid(std::size_t size) : size_(size) {
    if (size < 2) throw DomainError("angle grid needs at least 2 points");
}

double AngleGrid::spacing() const { return kTwoPi / static_cast<double>(size_); }

double AngleGrid::point(std::size_t j) const { return -kPi + spacing() * static_cast<double>(j); }

std::vector<double> AngleGrid::points() const {
    std::vector<double> out(size_);
    for (std::size_t j = 0; j < size_; ++j) out[j] = point(j);
    return out;
}

const char* to_string(ParityClass p) {
    switch (p) {
    case ParityClass::Even: return "even";
    case ParityClass::Odd: return "odd";
    case ParityClass::Mixed: return "mixed";
    }
    return "unknown";
}

AngularWaveFunction AngularWaveFunction::from_coefficients(std::vector<Complex> coeffs, const RotorSpec& spec) {
    spec.validate();
    if (coeffs.empty() || coeffs.size() % 2 == 0) {
        throw DomainError("coefficient vector must have odd length 2N+1");
    }
    const double n2 = norm_squared(coeffs);
    if (!(n2 > 0.0) || !std::isfinite(n2)) throw DegenerateState("state has zero (or non-finite) norm");
    const double scale = 1.0 / std::sqrt(n2);
    for (auto& z : coeffs) z *= scale;
    const int cutoff = static_cast<int>(coeffs.size() / 2);
    return AngularWaveFunction(std::move(coeffs), cutoff, spec);
}

Complex AngularWaveFunction::coeff(int n) const {
    if (n < -cutoff_ || n > cutoff_) return {0.0, 0.0};
    return coeffs_[static_cast<std::size_t>(n + cutoff_)];
}

Complex AngularWaveFunction::value(double phi) const {
    Complex sum{0.0, 0.0};
    for (int n = -cutoff_; n <= cutoff_; ++n) sum += coeff(n) * std::polar(1.0, n * phi);
    return sum * kInvSqrtTwoPi;
}

double AngularWaveFunction::mean_momentum() const {
    double s = 0.0;
    for (int n = -cutoff_; n <= cutoff_; ++n) s += std::norm(coeff(n)) * n;
    return s * spec_.hbar;
}

double AngularWaveFunction::momentum_second_moment() const {
    double s = 0.0;
    for (int n = -cutoff_; n <= cutoff_; ++n) s += std::norm(coeff(n)) * static_cast<double>(n) * n;
    return s * spec_.hbar * spec_.hbar;
}

double AngularWaveFunction::energy() const { return momentum_second_moment() / (2.0 * spec_.inertia); }

AngularWaveFunction make_eigenstate(int n, int cutoff, const RotorSpec& spec) {
    check_cutoff(cutoff);
    if (std::abs(n) > cutoff) {
        throw CutoffViolation("eigenstate index " + std::to_string(n) + " exceeds cutoff " + std::to_string(cutoff));
    }
    std::vector<Complex> c(2 * static_cast<std::size_t>(cutoff) + 1);
    c[n + cutoff] = 1.0;
    return AngularWaveFunction::from_coefficients(std::move(c), spec);
}

AngularWaveFunction make_superposition(std::span<const Term> terms, int cutoff, const RotorSpec& spec) {
    check_cutoff(cutoff);
    std::vector<Complex> c(2 * static_cast<std::size_t>(cutoff) + 1);
    for (const auto& t : terms) {
        if (std::abs(t.n) > cutoff) {
            throw CutoffViolation("term index " + std::to_string(t.n) + " exceeds cutoff " + std::to_string(cutoff));
        }
        c[t.n + cutoff] += t.amplitude;
    }
    if (norm_squared(c) == 0.0) throw DegenerateState("superposition has all-zero amplitudes");
    return AngularWaveFunction::from_coefficients(std::move(c), spec);
}

AngularWaveFunction make_wavepacket(double mean_angle, double concentration, int cutoff, const RotorSpec& spec) {
    check_cutoff(cutoff);
    if (!(concentration >= 0.0)) throw DomainError("concentration must be non-negative");
    if (concentration > 0.0 && cutoff < 1) throw DomainError("a localized wavepacket needs cutoff >= 1");
    return AngularWaveFunction::from_coefficients(von_mises_coefficients(mean_angle, concentration, 0.0, cutoff), spec);
}

AngularWaveFunction make_boosted_wavepacket(double mean_angle, double concentration, double mean_momentum,
                                            int cutoff, const RotorSpec& spec) {
    spec.validate();
    check_cutoff(cutoff);
    if (!(concentration > 0.0)) throw DomainError("boosted wavepacket needs positive concentration");
    if (cutoff < 1) throw DomainError("boosted wavepacket needs cutoff >= 1");
    const double target = mean_momentum / spec.hbar;
    if (!(std::abs(target) < cutoff)) throw DomainError("requested mean momentum is outside the cutoff window");

    auto mean_at = [&](double beta) {
        return mean_index(von_mises_coefficients(0.0, concentration, beta, cutoff), cutoff);
    };
    double lo = -1.0;
    double hi = 1.0;
    while (mean_at(lo) > target) lo *= 2.0;
    while (mean_at(hi) < target) hi *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        (mean_at(mid) < target ? lo : hi) = mid;
    }
    const double beta = 0.5 * (lo + hi);
    return AngularWaveFunction::from_coefficients(von_mises_coefficients(mean_angle, concentration, beta, cutoff), spec);
}

std::vector<Complex> to_angle_samples(const AngularWaveFunction& psi, const AngleGrid& grid) {
    const int cutoff = psi.cutoff();
    if (grid.size() < 2 * static_cast<std::size_t>(cutoff) + 1) {
        throw ResolutionError("angle grid of " + std::to_string(grid.size()) + " points aliases cutoff " +
                              std::to_string(cutoff));
    }
    std::vector<Complex> out(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) out[j] = psi.value(grid.point(j));
    return out;
}

AngularWaveFunction from_angle_samples(std::span<const Complex> samples, int cutoff, const RotorSpec& spec) {
    check_cutoff(cutoff);
    if (samples.size() < 2) throw DomainError("need at least 2 samples");
    if (samples.size() < 2 * static_cast<std::size_t>(cutoff) + 1) {
        throw ResolutionError("too few samples for cutoff " + std::to_string(cutoff));
    }
    const AngleGrid grid(samples.size());
    const double scale = std::sqrt(kTwoPi) / static_cast<double>(samples.size());
    std::vector<Complex> c(2 * static_cast<std::size_t>(cutoff) + 1);
    for (int n = -cutoff; n <= cutoff; ++n) {
        Complex s{0.0, 0.0};
        for (std::size_t j = 0; j < samples.size(); ++j) s += samples[j] * std::polar(1.0, -n * grid.point(j));
        c[n + cutoff] = s * scale;
    }
    if (norm_squared(c) == 0.0) throw DegenerateState("samples have zero norm");
    return AngularWaveFunction::from_coefficients(std::move(c), spec);
}

Complex inner_product(const AngularWaveFunction& psi1, const AngularWaveFunction& psi2) {
    require_same_spec(psi1.spec(), psi2.spec());
    const int n = std::min(psi1.cutoff(), psi2.cutoff());
    Complex s{0.0, 0.0};
    for (int k = -n; k <= n; ++k) s += std::conj(psi1.coeff(k)) * psi2.coeff(k);
    return s;
}

ParityClass parity_class(const AngularWaveFunction& psi) {
    bool has_even = false;
    bool has_odd = false;
    for (int n = -psi.cutoff(); n <= psi.cutoff(); ++n) {
        if (std::abs(psi.coeff(n)) < kNormTolerance) continue;
        (n % 2 == 0 ? has_even : has_odd) = true;
    }
    if (has_even && has_odd) return ParityClass::Mixed;
    return has_odd ? ParityClass::Odd : ParityClass::Even;
}

} // namespace rotor
