#include "rotor/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "rotor/errors.hpp"

namespace rotor {

AngularWaveFunction evolve_quantum(const AngularWaveFunction& psi, const EvolutionParams& params) {
    require_same_spec(psi.spec(), params.spec);
    const double rate = params.spec.hbar * params.time / (2.0 * params.spec.inertia);
    const int N = psi.cutoff();
    std::vector<Complex> c(psi.coefficients().begin(), psi.coefficients().end());
    for (int n = -N; n <= N; ++n) {
        // reduce n^2 * rate modulo 2 pi before forming the phase
        const double phase = std::fmod(static_cast<double>(n) * n * rate, kTwoPi);
        c[n + N] *= std::polar(1.0, -phase);
    }
    return AngularWaveFunction::from_coefficients(std::move(c), psi.spec());
}

WignerField liouville_transport(const WignerField& field, const EvolutionParams& params) {
    require_same_spec(field.spec(), params.spec);
    ModeSpectrum spectrum = analyze(field);
    const auto& lattice = spectrum.lattice();
    const double hbar = params.spec.hbar;
    for (std::size_t row = 0; row < lattice.size(); ++row) {
        const double J = lattice.j_over_hbar(row) * hbar;
        const double drift = J * params.time / params.spec.inertia;
        for (int m = -spectrum.mode_limit(); m <= spectrum.mode_limit(); ++m) {
            if (m == 0) continue;
            spectrum.at(row, m) *= std::polar(1.0, std::fmod(m * drift, kTwoPi));
        }
    }
    return synthesize(spectrum, field.grid(), field.spec());
}

double coherence_residual(const AngularWaveFunction& psi, const EvolutionParams& params, const AngleGrid& grid,
                          const MomentumLattice& lattice) {
    const WignerField quantum = wigner_field(evolve_quantum(psi, params), grid, lattice);
    const WignerField classical = liouville_transport(wigner_field(psi, grid, lattice), params);
    double worst = 0.0;
    const auto q = quantum.values();
    const auto c = classical.values();
    for (std::size_t i = 0; i < q.size(); ++i) worst = std::max(worst, std::abs(q[i] - c[i]));
    return worst;
}

} // namespace rotor
