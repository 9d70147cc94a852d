#include "rotor/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rotor/errors.hpp"
#include "rotor/parallel.hpp"

namespace rotor {

namespace {

int max_cutoff(const ThermalEnsemble& ens) {
    int n = 0;
    for (const auto& m : ens.members()) n = std::max(n, m.state.cutoff());
    return n;
}

// Spectrum of one member padded to the ensemble-wide mode limit.
ModeSpectrum padded_spectrum(const AngularWaveFunction& psi, const MomentumLattice& lattice, int mode_limit) {
    const ModeSpectrum own = mode_spectrum(psi, lattice);
    ModeSpectrum out(lattice, mode_limit);
    for (std::size_t row = 0; row < lattice.size(); ++row) {
        for (int m = -own.mode_limit(); m <= own.mode_limit(); ++m) out.at(row, m) = own.at(row, m);
    }
    return out;
}

} // namespace

ThermalEnsemble::ThermalEnsemble(std::vector<AngularWaveFunction> states, std::vector<double> weights,
                                 const RotorSpec& spec, std::optional<double> kT)
    : spec_(spec), kT_(kT) {
    spec.validate();
    if (states.empty()) throw DomainError("ensemble needs at least one state");
    if (states.size() != weights.size()) throw DomainError("one weight per ensemble member is required");
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw DomainError("ensemble weights must be finite and non-negative");
        total += w;
    }
    if (!(total > 0.0)) throw DegenerateState("ensemble weights sum to zero");
    members_.reserve(states.size());
    for (std::size_t s = 0; s < states.size(); ++s) {
        require_same_spec(states[s].spec(), spec);
        const double E = states[s].energy();
        const double J = states[s].mean_momentum();
        members_.push_back({std::move(states[s]), weights[s] / total, E, J});
    }
}

ThermalEnsemble build_boltzmann_ensemble(std::span<const AngularWaveFunction> states, double kT,
                                         const RotorSpec& spec) {
    if (states.empty()) throw DomainError("ensemble needs at least one state");
    if (!(kT >= 0.0)) throw DomainError("kT must be non-negative");
    std::vector<double> energies;
    energies.reserve(states.size());
    for (const auto& s : states) energies.push_back(s.energy());
    const double e_min = *std::min_element(energies.begin(), energies.end());

    std::vector<double> weights(states.size());
    if (kT == 0.0) {
        // ties are decided relative to the energy scale of the set
        const double tol = 1e-12 * std::max(1.0, std::abs(e_min));
        for (std::size_t s = 0; s < states.size(); ++s) weights[s] = energies[s] - e_min <= tol ? 1.0 : 0.0;
    } else if (std::isinf(kT)) {
        std::fill(weights.begin(), weights.end(), 1.0);
    } else {
        for (std::size_t s = 0; s < states.size(); ++s) weights[s] = std::exp(-(energies[s] - e_min) / kT);
    }
    return ThermalEnsemble({states.begin(), states.end()}, std::move(weights), spec, kT);
}

ModeSpectrum thermal_mode_spectrum(const ThermalEnsemble& ens, const MomentumLattice& lattice) {
    const int limit = 2 * max_cutoff(ens);
    ModeSpectrum total(lattice, limit);
    for (const auto& member : ens.members()) {
        total.add_scaled(padded_spectrum(member.state, lattice, limit), member.weight);
    }
    return total;
}

WignerField thermal_field(const ThermalEnsemble& ens, const AngleGrid& grid, const MomentumLattice& lattice) {
    return synthesize(thermal_mode_spectrum(ens, lattice), grid, ens.spec());
}

ThermalEnsemble dephase(const ThermalEnsemble& ens, double tau) {
    if (!(tau >= 0.0)) throw DomainError("coherence time must be non-negative");
    const double hbar = ens.spec().hbar;
    const double inertia = ens.spec().inertia;
    std::vector<AngularWaveFunction> states;
    std::vector<double> weights;
    for (const auto& member : ens.members()) {
        const int N = member.state.cutoff();
        const double Js = member.mean_momentum;
        std::vector<Complex> c(member.state.coefficients().begin(), member.state.coefficients().end());
        for (int a = -N; a <= N; ++a) {
            const double phase = (member.energy - (a * hbar - Js) * Js / inertia) * tau / hbar;
            c[a + N] *= std::polar(1.0, -std::fmod(phase, kTwoPi));
        }
        states.push_back(AngularWaveFunction::from_coefficients(std::move(c), ens.spec()));
        weights.push_back(member.weight);
    }
    return ThermalEnsemble(std::move(states), std::move(weights), ens.spec(), ens.temperature());
}

double thermal_momentum_square(const ThermalEnsemble& ens, MomentSource source) {
    double s = 0.0;
    for (const auto& member : ens.members()) {
        const double j2 = source == MomentSource::MeanMomentum ? member.mean_momentum * member.mean_momentum
                                                               : member.state.momentum_second_moment();
        s += member.weight * j2;
    }
    return s;
}

double omega_T(const ThermalEnsemble& ens, MomentSource source) {
    return std::sqrt(thermal_momentum_square(ens, source)) / ens.spec().inertia;
}

double wave_equation_residual(const ThermalEnsemble& ens, const AngleGrid& grid, const MomentumLattice& lattice,
                              MomentSource source) {
    const double inertia = ens.spec().inertia;
    const double omega2 = thermal_momentum_square(ens, source) / (inertia * inertia);
    const int limit = 2 * max_cutoff(ens);

    ModeSpectrum time_side(lattice, limit);
    ModeSpectrum angle_side(lattice, limit);
    for (const auto& member : ens.members()) {
        const ModeSpectrum own = padded_spectrum(member.state, lattice, limit);
        const double rate = member.mean_momentum / inertia;
        for (std::size_t row = 0; row < lattice.size(); ++row) {
            for (int m = -limit; m <= limit; ++m) {
                const Complex a = own.at(row, m);
                if (a == Complex{}) continue;
                const double m2 = static_cast<double>(m) * m;
                time_side.at(row, m) -= member.weight * m2 * rate * rate * a;
                angle_side.at(row, m) -= member.weight * m2 * omega2 * a;
            }
        }
    }
    const WignerField lhs = synthesize(time_side, grid, ens.spec());
    const WignerField rhs = synthesize(angle_side, grid, ens.spec());
    double diff = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < lhs.values().size(); ++i) {
        diff = std::max(diff, std::abs(lhs.values()[i] - rhs.values()[i]));
        scale = std::max(scale, std::abs(rhs.values()[i]));
    }
    return scale > 0.0 ? diff / scale : diff;
}

} // namespace rotor
