#ifndef ROTOR_DYNAMICS_HPP
#define ROTOR_DYNAMICS_HPP

#include "rotor/rotor_core.hpp"
#include "rotor/wigner.hpp"

namespace rotor {

/// Free-rotator evolution time together with the rotor it applies to.
struct EvolutionParams {
    double time = 0.0;
    RotorSpec spec{};
};

/// Schrodinger evolution under H = J^2 / 2I: c_n -> e^{-i n^2 hbar t / 2I} c_n.
AngularWaveFunction evolve_quantum(const AngularWaveFunction& psi, const EvolutionParams& params);

/**
 * Free Liouville flow f(phi, J, t) = f(phi - J t / I, J, 0), applied spectrally:
 * mode m of the row at J is multiplied by e^{i m J t / I}. Exact for band-limited
 * rows; throws ResolutionError if the grid cannot resolve field.mode_limit().
 */
WignerField liouville_transport(const WignerField& field, const EvolutionParams& params);

/// max |W[evolve_quantum(psi, t)] - liouville_transport(W[psi], t)| over the grid and lattice.
double coherence_residual(const AngularWaveFunction& psi, const EvolutionParams& params, const AngleGrid& grid,
                          const MomentumLattice& lattice);

} // namespace rotor

#endif
