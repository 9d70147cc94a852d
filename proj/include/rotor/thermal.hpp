#ifndef ROTOR_THERMAL_HPP
#define ROTOR_THERMAL_HPP

#include <optional>
#include <span>
#include <vector>

#include "rotor/rotor_core.hpp"
#include "rotor/wigner.hpp"

namespace rotor {

struct ThermalMember {
    AngularWaveFunction state;
    double weight;
    /// <H> of the state; recomputed from the coefficients.
    double energy;
    /// <J> of the state; recomputed from the coefficients.
    double mean_momentum;
};

/**
 * Weighted mixture of rotor states. Weights are normalized to sum 1;
 * energies and mean momenta are always derived from the member states.
 */
class ThermalEnsemble {
  public:
    ThermalEnsemble(std::vector<AngularWaveFunction> states, std::vector<double> weights, const RotorSpec& spec,
                    std::optional<double> kT = std::nullopt);

    const std::vector<ThermalMember>& members() const { return members_; }
    const RotorSpec& spec() const { return spec_; }
    std::optional<double> temperature() const { return kT_; }

  private:
    std::vector<ThermalMember> members_;
    RotorSpec spec_;
    std::optional<double> kT_;
};

/// Weights proportional to e^{-E_s / kT}. kT = 0 splits the weight equally
/// among the minimal-energy members; kT = +inf gives uniform weights.
ThermalEnsemble build_boltzmann_ensemble(std::span<const AngularWaveFunction> states, double kT,
                                         const RotorSpec& spec = {});

/// f_T~'(m, J/hbar) = sum_s w_s c^s_b conj(c^s_a).
ModeSpectrum thermal_mode_spectrum(const ThermalEnsemble& ens, const MomentumLattice& lattice);

/// Weighted sum of member Wigner fields.
WignerField thermal_field(const ThermalEnsemble& ens, const AngleGrid& grid, const MomentumLattice& lattice);

/**
 * Dephasing over one coherence time tau. Member coefficient c_a picks up
 * e^{-(i/hbar)(E_s - (a hbar - J_s) J_s / I) tau}, so every Fourier mode m of the
 * member's spectrum is multiplied by e^{-i tau m J_s / I}.
 */
ThermalEnsemble dephase(const ThermalEnsemble& ens, double tau);

/// Source of <J^2>_T: member mean momenta squared, or member second moments.
enum class MomentSource { MeanMomentum, SecondMoment };

/// <J^2>_T = sum_s w_s J_s^2 (or sum_s w_s <J^2>_s).
double thermal_momentum_square(const ThermalEnsemble& ens, MomentSource source = MomentSource::MeanMomentum);

/// Omega_T = sqrt(<J^2>_T) / I.
double omega_T(const ThermalEnsemble& ens, MomentSource source = MomentSource::MeanMomentum);

/**
 * Mismatch between d^2 f_T / dt^2 (per member: -(m J_s / I)^2 times its modes)
 * and Omega_T^2 d^2 f_T / dphi^2 (-m^2 Omega_T^2 times the ensemble modes),
 * both reconstructed on the grid. Returns max |difference| / max |Omega side|,
 * or the absolute max difference when the Omega side vanishes.
 */
double wave_equation_residual(const ThermalEnsemble& ens, const AngleGrid& grid, const MomentumLattice& lattice,
                              MomentSource source = MomentSource::MeanMomentum);

} // namespace rotor

#endif
